#pragma once

// Ground and ladder-built eigenfunctions of the Schrodinger form
//   Psi'' + [bracket(theta) + E] Psi = 0,   Theta = Psi / sqrt(sin theta).

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "swsh/errors.hpp"
#include "swsh/jet.hpp"
#include "swsh/quad.hpp"
#include "swsh/superpotential.hpp"

namespace swsh {

/// A function of theta that can report its Taylor jet of any order.
template <class Real>
class Evaluable {
public:
    using JetFn = std::function<Jet<Real>(const Real&, int)>;

    Evaluable() = default;
    explicit Evaluable(JetFn fn) : fn_(std::move(fn)) {}

    Jet<Real> jet(const Real& theta, int order) const { return fn_(theta, order); }
    Real operator()(const Real& theta) const { return fn_(theta, 0).value(); }
    Real derivative(const Real& theta, int k) const { return fn_(theta, k).derivative_value(k); }

    Evaluable scaled(const Real& factor) const {
        return Evaluable([f = fn_, factor](const Real& t, int k) { return f(t, k) * factor; });
    }

private:
    JetFn fn_;
};

/// exp(-integral W) for a collapsed superpotential, unnormalized.
template <class Real>
Evaluable<Real> ground_evaluable(const CollapsedSuperpotential<Real>& w) {
    return Evaluable<Real>([w](const Real& t, int k) { return exp(w.log_ground_jet(t, k)); });
}

/// A^dagger psi = -psi' + W psi.
template <class Real>
Evaluable<Real> ladder_apply(const CollapsedSuperpotential<Real>& w, const Evaluable<Real>& psi) {
    return Evaluable<Real>([w, psi](const Real& t, int k) {
        const Jet<Real> p = psi.jet(t, k + 1);
        return -p.derivative() + w.jet(t, k) * p.truncated(k);
    });
}

/// Pointwise Psi'' + [bracket + E] Psi.
template <class Real>
Real schrodinger_defect(const Evaluable<Real>& psi, const Real& m, const Real& beta, const Real& energy,
                        const Real& theta) {
    using std::cos;
    using std::sin;
    const Jet<Real> j = psi.jet(theta, 2);
    return j.derivative_value(2) + (potential_bracket(m, beta, sin(theta), cos(theta)) + energy) * j.value();
}

/// max |defect| / max |psi| over the grid; independent of the normalization constant.
/// Grid points must lie in (0.05, pi - 0.05).
template <class Real>
Real relative_residual(const Evaluable<Real>& psi, const Real& m, const Real& beta, const Real& energy,
                       const std::vector<double>& grid);

/// Integral over (0, pi) of f^2, on endpoint-graded panels.
double integrate_square(const std::function<double(double)>& f, int panels_per_side = 12);

/// Evenly spaced residual grid in [0.05 + margin, pi - 0.05 - margin].
std::vector<double> interior_grid(int count);

class GroundState {
public:
    /// Uses orders 0..order of the series (all built orders when unset). The
    /// normalization constant starts at 1; see normalize() / normalized().
    GroundState(const SuperpotentialSeries& series, double beta, std::optional<int> order = std::nullopt);

    double beta() const noexcept { return beta_; }
    int order() const noexcept { return eff_->order(); }
    double norm() const noexcept { return norm_; }
    const Rational& m() const noexcept { return eff_->m; }
    const EffectiveSuperpotential& superpotential() const noexcept { return *eff_; }
    const std::vector<Rational>& energies() const noexcept { return energies_; }

    /// E_0(beta) = sum_{n <= order} E_{0,n} beta^n.
    template <class Real>
    Real energy(const Real& beta) const {
        Real acc = Real(0);
        for (int n = order(); n >= 0; --n) acc = acc * beta + energies_[static_cast<std::size_t>(n)].template to<Real>();
        return acc;
    }

    GroundState with_norm(double norm) const;
    /// Copy carrying the L2 normalization constant.
    GroundState normalized() const;

    /// Unnormalized log Psi_0.
    double log_profile(double theta) const { return w_.log_ground(theta); }

    Evaluable<double> evaluable() const;
    Evaluable<quad> evaluable_quad() const;

private:
    std::shared_ptr<const EffectiveSuperpotential> eff_;
    std::vector<Rational> energies_;
    double beta_;
    double norm_ = 1.0;
    CollapsedSuperpotential<double> w_;
};

double ground_psi(const GroundState& g, double theta);
double ground_theta(const GroundState& g, double theta);
/// L2 normalization constant over (0, pi) in dtheta. Throws NumericError when
/// the quadrature error estimate exceeds 1e-12 relative.
double normalize(const GroundState& g, int panels_per_side = 12);
/// Relative Schrodinger residual of the ground state on the grid, computed in
/// quad precision with analytic derivatives.
double schrodinger_residual(const GroundState& g, const std::vector<double>& grid);

// ---------------------------------------------------------------------------

template <class Real>
Real relative_residual(const Evaluable<Real>& psi, const Real& m, const Real& beta, const Real& energy,
                       const std::vector<double>& grid) {
    using std::abs;
    constexpr double kMargin = 0.05;
    Real worst = Real(0);
    Real scale = Real(0);
    for (const double t : grid) {
        if (!(t > kMargin && t < 3.14159265358979323846 - kMargin)) {
            throw DomainError("residual grid point " + std::to_string(t) + " outside (0.05, pi - 0.05)");
        }
        const Real theta = Real(t);
        const Jet<Real> j = psi.jet(theta, 2);
        using std::cos;
        using std::sin;
        const Real defect =
            j.derivative_value(2) + (potential_bracket(m, beta, sin(theta), cos(theta)) + energy) * j.value();
        if (abs(defect) > worst) worst = abs(defect);
        if (abs(j.value()) > scale) scale = abs(j.value());
    }
    if (scale == Real(0)) throw NumericError("relative_residual: function vanishes on the grid");
    return worst / scale;
}

}  // namespace swsh
