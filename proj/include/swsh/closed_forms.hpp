#pragma once

// Printed low-order closed forms, kept as reference values. The recursion
// never reads these; they exist so tests and the verify report can compare
// against them and flag disagreements.

#include <optional>
#include <string>
#include <vector>

#include "swsh/rational.hpp"
#include "swsh/trig_poly.hpp"

namespace swsh::closed_forms {

/// Printed E_{0,n;m} for n = 1..4. Order 2 is returned exactly as printed.
Rational printed_energy(int n, const Rational& m);

/// -(4m^2 + 10m + 5) / (2m+2)^3, the order-2 energy obtained by coefficient matching.
Rational matched_energy2(const Rational& m);

/// Printed W_1..W_4. The printed W_4 labels its sin^3 coefficient b_{4,1};
/// the coefficient list only defines b_{4,2} for that slot, which is used here.
TrigPoly printed_w(int n, const Rational& m);

/// Printed shape-invariance quantities, as functions of the scale parameters.
/// `b11`, `b21`, `a21` are whatever the caller decides the printed symbols mean
/// (bare scale factor or full coefficient); see the flow reference report.
struct PrintedFlow {
    Rational c00;
    Rational d00;
    Rational r0;
    Rational d11_factor;  // D_{1,1} = d11_factor * B_{1,1}
    Rational r1;
    Rational d21;
    Rational c21;
    Rational r2;
};

PrintedFlow printed_flow(const Rational& m, const Rational& a00, const Rational& b00, const Rational& b11,
                         const Rational& b21, const Rational& a21);

}  // namespace swsh::closed_forms
