#pragma once

// Order-by-order construction of the superpotential
//
//   W(theta) = W_0(theta) + sum_{n>=1} beta^n W_n(theta),   E_0(beta) = sum_n E_{0,n} beta^n
//
// for spin weight s = 1/2 at a fixed rational azimuthal number m. Each order
// solves the linear Riccati equation W_n' - 2 W_0 W_n = f_n exactly in the
// closed TrigPoly basis.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swsh/rational.hpp"
#include "swsh/trig_poly.hpp"

namespace swsh {

inline constexpr int kDefaultOrder = 16;

/// The fixed spin weight.
inline Rational spin_weight() { return Rational(1, 2); }

/// Throws DomainError unless m > 0.
void validate_m(const Rational& m);

class SuperpotentialSeries {
public:
    SuperpotentialSeries(Rational m, CotCsc w0, Rational e0);

    const Rational& m() const noexcept { return m_; }
    static Rational s() { return spin_weight(); }
    int order() const noexcept { return static_cast<int>(w_.size()); }

    /// W_0 = cot_coeff * cot + csc_coeff * csc = -(m + 1/2) cot - (1/2) csc.
    const CotCsc& w0() const noexcept { return w0_; }
    /// W_n for 1 <= n <= order(). Throws StateError otherwise.
    const TrigPoly& w(int n) const;
    /// E_{0,n} for 0 <= n <= order().
    const Rational& energy(int n) const;
    const std::vector<Rational>& energies() const noexcept { return energy_; }

    /// Appends the next order. Only the builder and tests extend a series.
    void append(TrigPoly wn, Rational en);

private:
    Rational m_;
    CotCsc w0_;
    std::vector<TrigPoly> w_;  // w_[n-1] = W_n
    std::vector<Rational> energy_;
};

struct Order0 {
    CotCsc w0;
    Rational energy;
};

struct OrderSolution {
    TrigPoly w;
    Rational energy;
};

Order0 seed_order0(const Rational& m);
OrderSolution seed_order1(const Rational& m);

/// The theta-dependent part of f_n that does not involve W_k, without E_{0,n}:
/// order 0 carries the centrifugal csc^2 terms, order 1 the -2s cos term,
/// order 2 the cos^2 term. Empty for n >= 3.
SourceSeries potential_source(int n, const Rational& m);

/// f_n - E_{0,n}: the convolution sum_{k=1}^{n-1} W_k W_{n-k}, plus for n = 2 the
/// folded cos^2 = 1 - sin^2 (constant +1, h_2 -1). Requires orders < n in `prior`.
SourceSeries source_series(int n, const SuperpotentialSeries& prior);

/// E_{0,n} from the finiteness condition on the P(2m, theta) coefficient.
Rational energy_correction(int n, const SourceSeries& src, const Rational& m);

/// W_n from the closed-form a_{n,l}, b_{n,l} sums. Checks the W_n index bounds,
/// including the even-n cancellation of the would-be top coefficients.
TrigPoly superpotential_order(int n, const SourceSeries& src, const Rational& energy, const Rational& m);

/// Independent route: direct elimination of the coefficient-matching system
/// (2m+2p) b_p + a_p = g_p,  b_p + (2m+2p) a_p - (2m+2p-1) a_{p-1} = h_p + delta_{p1} E,
/// solved downward from the top index with a vanishing top a.
OrderSolution match_order(int n, const SourceSeries& src, const Rational& m);

/// Builds orders 0..order and verifies every Riccati residual and cross-check identity.
SuperpotentialSeries build_series(const Rational& m, int order = kDefaultOrder);

/// W_n' - 2 W_0 W_n - f_n (for n = 0: W_0' - W_0^2 - f_0). Zero on success.
/// `energy_override` replaces E_{0,n} inside f_n.
SourceSeries riccati_residual(const SuperpotentialSeries& series, int n,
                              const std::optional<Rational>& energy_override = std::nullopt);

struct IdentityCheck {
    std::string identity;
    int n = 0;
    int l = 0;
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs == rhs; }
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_hold() const;
    std::vector<IdentityCheck> failures() const;
};

/// b_{n,l} = (g_{n,l} - a_{n,l}) / (2m+2l) for l >= 2, a_{n,1} = (2m+2) E_{0,n} / ((2m+1)(2m+3))
/// for n >= 3, and the W_n index bounds, over every built order.
IdentityReport crosscheck_identities(const SuperpotentialSeries& series);

/// Sum_{n <= order} E_{0,n} beta^n.
template <class Real>
Real energy_sum(const SuperpotentialSeries& series, const Real& beta, int order) {
    Real acc = Real(0);
    for (int n = order; n >= 0; --n) acc = acc * beta + series.energy(n).template to<Real>();
    return acc;
}

}  // namespace swsh
