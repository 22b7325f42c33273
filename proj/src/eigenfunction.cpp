#include "swsh/eigenfunction.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace swsh {

double integrate_square(const std::function<double(double)>& f, int panels_per_side) {
    const double pi = std::numbers::pi;
    // Breakpoints 0, (pi/2) 2^-(P-1), ..., pi/4, pi/2 and their mirror images.
    std::vector<double> cuts{0.0};
    for (int j = panels_per_side - 1; j >= 0; --j) cuts.push_back(0.5 * pi * std::ldexp(1.0, -j));
    for (int j = 1; j < panels_per_side; ++j) cuts.push_back(pi - 0.5 * pi * std::ldexp(1.0, -j));
    cuts.push_back(pi);

    auto sq = [&f](double t) {
        const double v = f(t);
        return v * v;
    };
    // Double-exponential rule per panel: endpoint power laws like theta^{2m} cost nothing extra.
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0;
        total += rule.integrate(sq, cuts[i], cuts[i + 1], 1e-14, &err);
        error += err;
    }
    if (!(total > 0.0) || !std::isfinite(total)) throw NumericError("integrate_square: non-positive or non-finite integral");
    if (error > 1e-12 * total) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "integrate_square: quadrature error %.3e exceeds 1e-12 relative", error / total);
        throw NumericError(buf);
    }
    return total;
}

std::vector<double> interior_grid(int count) {
    if (count < 2) throw DomainError("interior_grid needs at least 2 points");
    const double lo = 0.06;
    const double hi = std::numbers::pi - 0.06;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
}

GroundState::GroundState(const SuperpotentialSeries& series, double beta, std::optional<int> order)
    : eff_(std::make_shared<const EffectiveSuperpotential>(
          EffectiveSuperpotential::physical(series, order.value_or(series.order())))),
      energies_(series.energies().begin(), series.energies().begin() + eff_->order() + 1),
      beta_(beta),
      w_(*eff_, beta) {
    if (!std::isfinite(beta)) throw DomainError("beta must be finite");
}

GroundState GroundState::with_norm(double norm) const {
    if (!(norm > 0.0)) throw DomainError("normalization constant must be positive");
    GroundState out = *this;
    out.norm_ = norm;
    return out;
}

GroundState GroundState::normalized() const { return with_norm(normalize(*this)); }

Evaluable<double> GroundState::evaluable() const { return ground_evaluable(w_).scaled(norm_); }

Evaluable<quad> GroundState::evaluable_quad() const {
    return ground_evaluable(CollapsedSuperpotential<quad>(*eff_, quad(beta_))).scaled(quad(norm_));
}

double ground_psi(const GroundState& g, double theta) { return g.norm() * std::exp(g.log_profile(theta)); }

double ground_theta(const GroundState& g, double theta) { return ground_psi(g, theta) / std::sqrt(std::sin(theta)); }

double normalize(const GroundState& g, int panels_per_side) {
    const double integral = integrate_square([&g](double t) { return std::exp(g.log_profile(t)); }, panels_per_side);
    return 1.0 / std::sqrt(integral);
}

double schrodinger_residual(const GroundState& g, const std::vector<double>& grid) {
    const quad beta(g.beta());
    const quad r = relative_residual(g.evaluable_quad(), g.m().to<quad>(), beta, g.energy(beta), grid);
    return static_cast<double>(r);
}

}  // namespace swsh
