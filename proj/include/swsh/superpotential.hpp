#pragma once

// Floating evaluation of a (possibly re-parameterized) superpotential at fixed beta.

#include <cmath>
#include <vector>

#include "swsh/jet.hpp"
#include "swsh/series.hpp"
#include "swsh/trig_poly.hpp"

namespace swsh {

/// W = w0 + sum_n beta^n orders[n-1], with exact coefficients. The physical
/// superpotential and every flowed parameter set share this shape.
struct EffectiveSuperpotential {
    Rational m;
    CotCsc w0;
    std::vector<TrigPoly> orders;

    int order() const noexcept { return static_cast<int>(orders.size()); }
    const TrigPoly& w(int n) const { return orders.at(static_cast<std::size_t>(n - 1)); }

    /// The series-engine W truncated at `order` (all built orders when negative).
    static EffectiveSuperpotential physical(const SuperpotentialSeries& series, int order = -1);
};

/// The 1/2-spin angular potential bracket of the Schrodinger form,
/// 1/4 + s + beta^2 cos^2 - 2 s beta cos - ((m + s cos)^2 - 1/4) / sin^2, with s = 1/2.
template <class Real>
Real potential_bracket(const Real& m, const Real& beta, const Real& s, const Real& c) {
    const Real half = Real(1) / Real(2);
    const Real mc = m + half * c;
    return Real(3) / Real(4) + beta * beta * c * c - beta * c - (mc * mc - Real(1) / Real(4)) / (s * s);
}

/// W collapsed at a fixed beta: kappa cot + gamma csc + sum_k (B_k + A_k cos) sin^{2k-1}.
template <class Real>
class CollapsedSuperpotential {
public:
    CollapsedSuperpotential(const EffectiveSuperpotential& eff, const Real& beta) {
        kappa_ = eff.w0.cot_coeff.to<Real>();
        gamma_ = eff.w0.csc_coeff.to<Real>();
        Real bn = Real(1);
        for (int n = 1; n <= eff.order(); ++n) {
            bn *= beta;
            const TrigPoly& wn = eff.w(n);
            const int top = std::max(wn.max_cos_index(), wn.max_sin_index());
            if (static_cast<int>(a_.size()) < top) {
                a_.resize(static_cast<std::size_t>(top), Real(0));
                b_.resize(static_cast<std::size_t>(top), Real(0));
            }
            for (const auto& [k, v] : wn.cos_part()) a_[static_cast<std::size_t>(k - 1)] += bn * v.template to<Real>();
            for (const auto& [k, v] : wn.sin_part()) b_[static_cast<std::size_t>(k - 1)] += bn * v.template to<Real>();
        }
    }

    Real value(const Real& theta) const {
        using std::cos;
        using std::sin;
        const Real s = sin(theta);
        const Real c = cos(theta);
        const Real s2 = s * s;
        Real acc_a = Real(0), acc_b = Real(0);
        for (std::size_t k = a_.size(); k-- > 0;) {
            acc_a = acc_a * s2 + a_[k];
            acc_b = acc_b * s2 + b_[k];
        }
        return (kappa_ * c + gamma_) / s + s * (acc_b + c * acc_a);
    }

    Jet<Real> jet(const Real& theta, int order) const {
        const SinCosJet<Real> sc(theta, order);
        const Jet<Real> s2 = sc.s * sc.s;
        Jet<Real> acc_a(order), acc_b(order);
        for (std::size_t k = a_.size(); k-- > 0;) {
            acc_a = acc_a * s2 + a_[k];
            acc_b = acc_b * s2 + b_[k];
        }
        return (sc.c * kappa_ + gamma_) / sc.s + sc.s * (acc_b + sc.c * acc_a);
    }

    /// -integral of W, with the sin-power antiderivatives anchored at 0:
    /// -kappa ln sin - gamma ln tan(theta/2) - sum_k (A_k sin^{2k}/(2k) + B_k P(2k-1, theta)).
    Real log_ground(const Real& theta) const {
        using std::cos;
        using std::log;
        using std::sin;
        const Real s = sin(theta);
        const Real half = theta / Real(2);
        Real out = -kappa_ * log(s) - gamma_ * (log(sin(half)) - log(cos(half)));
        Real s2k = Real(1);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const int k = static_cast<int>(i) + 1;
            s2k *= s * s;
            if (a_[i] != Real(0)) out -= a_[i] * s2k / Real(2 * k);
            if (b_[i] != Real(0)) out -= b_[i] * sin_odd_antiderivative<Real>(k, theta);
        }
        return out;
    }

    Jet<Real> log_ground_jet(const Real& theta, int order) const {
        if (order == 0) return Jet<Real>(0, log_ground(theta));
        return (-jet(theta, order - 1)).integral(log_ground(theta));
    }

    const Real& kappa() const noexcept { return kappa_; }
    const Real& gamma() const noexcept { return gamma_; }

private:
    Real kappa_{}, gamma_{};
    std::vector<Real> a_, b_;
};

}  // namespace swsh
