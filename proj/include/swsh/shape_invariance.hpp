#pragma once

// Shape invariance of the re-parameterized superpotential
//
//   W(A, B) = -A00 (m + 1/2) cot - (B00 / 2) csc + sum_n beta^n W_n(A, B),
//   W_n(A, B) = sum_j B_{n,j} b_{n,j} sin^{2j-1} + cos sum_j A_{n,j} a_{n,j} sin^{2j-1},
//
// order by order: V+_n(A, B) = V-_n(C, D) + R_n with theta-independent R_n.
// The flowed set (C, D) is found by solving the coefficient-matching system
// backward in the sin-power index.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "swsh/eigenfunction.hpp"
#include "swsh/series.hpp"
#include "swsh/superpotential.hpp"

namespace swsh {

/// Scale factors relative to the physical coefficients. Missing entries are 1.
class ShapeParamSet {
public:
    using Key = std::pair<int, int>;  // (n, j)

    Rational a00{1};
    Rational b00{1};
    std::map<Key, Rational> a;
    std::map<Key, Rational> b;

    static ShapeParamSet all_ones() { return {}; }

    Rational a_scale(int n, int j) const;
    Rational b_scale(int n, int j) const;
    void set_a(int n, int j, const Rational& v);
    void set_b(int n, int j, const Rational& v);

    /// Effective superpotential: abar = A a, bbar = B b through `order`.
    EffectiveSuperpotential apply(const SuperpotentialSeries& series, int order) const;

    /// Scales that reproduce `eff` on top of the physical coefficients.
    /// Throws SingularFlowError where a physical coefficient is zero but the
    /// effective one is not.
    static ShapeParamSet from_effective(const EffectiveSuperpotential& eff, const SuperpotentialSeries& series);

    friend bool operator==(const ShapeParamSet&, const ShapeParamSet&) = default;
};

/// Order-n pieces of V-/+ = W^2 -/+ W'.
struct PartnerOrder {
    SourceSeries vminus;
    SourceSeries vplus;
};

namespace partner {
/// G_{n,p} (cos part) and H_{n,p} of sum_{k=1}^{n-1} Wbar_k Wbar_{n-k}, by the explicit double sums.
SourceSeries convolution_terms(const EffectiveSuperpotential& eff, int n);
/// Assembly from P+-, Q+-, G, H.
PartnerOrder by_formula(const EffectiveSuperpotential& eff, int n);
/// W^2 -/+ W' expanded with the closed algebra.
PartnerOrder direct(const EffectiveSuperpotential& eff, int n);
}  // namespace partner

/// Both construction paths, required to agree exactly (VerificationError otherwise).
PartnerOrder partner_potential_order(const EffectiveSuperpotential& eff, int n);
PartnerOrder partner_potential_order(const ShapeParamSet& params, const SuperpotentialSeries& series, int n);

struct FlowStep {
    ShapeParamSet from;
    ShapeParamSet to;
    EffectiveSuperpotential from_eff;
    EffectiveSuperpotential to_eff;
    std::vector<Rational> remainder;  // R_n, n = 0..N
    std::map<int, Rational> alpha;    // alpha_p = (2m+1) C00 + 2p - 1

    int order() const noexcept { return static_cast<int>(remainder.size()) - 1; }
};

FlowStep solve_flow_step(const EffectiveSuperpotential& from, const SuperpotentialSeries& series, int order);
FlowStep solve_flow_step(const ShapeParamSet& params, const SuperpotentialSeries& series, int order);

struct InvarianceRow {
    int n = 0;
    Rational constant;        // V+_n(from) - V-_n(to), which must be theta-free
    bool exact = false;       // exact theta-independence and constant == R_n
    double float_deviation;   // max over the grid of |V+_n - V-_n - R_n| in double
};

struct InvarianceReport {
    std::vector<InvarianceRow> rows;
    bool all_hold() const;
};

/// Throws VerificationError naming the first offending order.
InvarianceReport verify_invariance(const FlowStep& step, const std::vector<double>& grid);

/// Steps a_1 -> a_2 -> ... -> a_{levels+1}, starting from the physical all-ones set.
std::vector<FlowStep> flow_chain(const SuperpotentialSeries& series, int levels, int order);

/// beta-series coefficients of E_l through `order`.
std::vector<Rational> excited_energy(const SuperpotentialSeries& series, int level, int order);
std::vector<Rational> excited_energy(const Rational& m, int level, int order);

/// Psi_l = A^dagger(a_1) ... A^dagger(a_l) Psi_0(a_{l+1}); unnormalized.
template <class Real>
Evaluable<Real> excited_wavefunction(const std::vector<FlowStep>& chain, int level, const Real& beta) {
    if (level < 0) throw DomainError("level must be nonnegative");
    if (level == 0) {
        if (chain.empty()) throw StateError("excited_wavefunction: empty flow chain");
        return ground_evaluable(CollapsedSuperpotential<Real>(chain.front().from_eff, beta));
    }
    if (static_cast<int>(chain.size()) < level) throw StateError("excited_wavefunction: flow chain too short");
    Evaluable<Real> psi =
        ground_evaluable(CollapsedSuperpotential<Real>(chain[static_cast<std::size_t>(level - 1)].to_eff, beta));
    for (int k = level; k >= 1; --k) {
        psi = ladder_apply(CollapsedSuperpotential<Real>(chain[static_cast<std::size_t>(k - 1)].from_eff, beta), psi);
    }
    return psi;
}

Evaluable<double> excited_wavefunction(const Rational& m, int level, double beta, int order);

/// Printed closed forms against the solver, report-only.
struct ReferenceComparison {
    std::string quantity;
    std::string reading;  // how the printed symbols were interpreted
    Rational printed;
    Rational solved;
    bool agrees() const { return printed == solved; }
};

/// Compares R_0, C00, D00, D_{1,1}, R_1, D_{2,1}, C_{2,1}, R_2 of a solved step
/// (order >= 2) under both readings of the printed B/A symbols: bare scale
/// factor and full coefficient.
std::vector<ReferenceComparison> compare_printed_flow(const FlowStep& step, const SuperpotentialSeries& series);

/// Counts of (n, p) where the printed explicit D_{n,p} / C_{n,p-1} update
/// formulas reproduce the solved scales, and where they do not.
struct UpdateFormulaCheck {
    int evaluated = 0;
    int d_mismatches = 0;
    int c_mismatches = 0;
    std::vector<std::string> details;  // first few mismatches
};
UpdateFormulaCheck check_printed_update_formulas(const FlowStep& step, const SuperpotentialSeries& series);

}  // namespace swsh
