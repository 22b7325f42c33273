#pragma once

// Closed trigonometric-polynomial algebra on (0, pi).
//
// Two bases carry every quantity of the perturbation series:
//
//   TrigPoly      u(t) = sum_k b_k sin^{2k-1} t + cos t * sum_k a_k sin^{2k-1} t,   k >= 1
//   SourceSeries  f(t) = sum_p (h_p + g_p cos t) sin^{2p-2} t,                       p >= 0
//
// Products of two TrigPolys, their derivatives, and their products with the
// singular order-zero superpotential (kappa cot t + gamma csc t) all close in
// the SourceSeries basis once cos^2 is rewritten as 1 - sin^2. Index p = 0
// (the csc^2 terms) only appears in order-zero quantities; p = 1 is the
// constant / bare cos part.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "swsh/errors.hpp"
#include "swsh/rational.hpp"

namespace swsh {

using CoeffMap = std::map<int, Rational>;

namespace detail {
/// Adds `value` at `key`, erasing the entry if it cancels to zero.
void accumulate(CoeffMap& map, int key, const Rational& value);
}  // namespace detail

class TrigPoly {
public:
    TrigPoly() = default;

    /// Coefficient a_k of cos t * sin^{2k-1} t (zero when absent).
    Rational a(int k) const;
    /// Coefficient b_k of sin^{2k-1} t (zero when absent).
    Rational b(int k) const;

    void add_a(int k, const Rational& v);
    void add_b(int k, const Rational& v);

    const CoeffMap& cos_part() const noexcept { return cos_; }
    const CoeffMap& sin_part() const noexcept { return sin_; }

    bool is_zero() const noexcept { return cos_.empty() && sin_.empty(); }
    int max_cos_index() const noexcept { return cos_.empty() ? 0 : cos_.rbegin()->first; }
    int max_sin_index() const noexcept { return sin_.empty() ? 0 : sin_.rbegin()->first; }

    TrigPoly scaled(const Rational& s) const;
    TrigPoly& operator+=(const TrigPoly& o);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

    template <class Real>
    Real eval(const Real& theta) const;

private:
    CoeffMap cos_;
    CoeffMap sin_;

    static void check_index(int k);
};

class SourceSeries {
public:
    SourceSeries() = default;

    Rational h(int p) const;
    Rational g(int p) const;
    void add_h(int p, const Rational& v);
    void add_g(int p, const Rational& v);

    /// The theta-independent part, h_1.
    Rational constant() const { return h(1); }

    const CoeffMap& h_part() const noexcept { return h_; }
    const CoeffMap& g_part() const noexcept { return g_; }

    bool is_zero() const noexcept { return h_.empty() && g_.empty(); }
    /// True when everything except h_1 vanishes.
    bool is_constant() const;
    int max_h_index() const noexcept { return h_.empty() ? 0 : h_.rbegin()->first; }
    int max_g_index() const noexcept { return g_.empty() ? 0 : g_.rbegin()->first; }

    SourceSeries scaled(const Rational& s) const;
    SourceSeries& operator+=(const SourceSeries& o);
    SourceSeries& operator-=(const SourceSeries& o);
    friend SourceSeries operator+(SourceSeries a, const SourceSeries& b) { return a += b; }
    friend SourceSeries operator-(SourceSeries a, const SourceSeries& b) { return a -= b; }
    friend bool operator==(const SourceSeries&, const SourceSeries&) = default;

    /// "h3=1/2, g2=-4/27" style listing of the nonzero entries.
    std::string describe() const;

    template <class Real>
    Real eval(const Real& theta) const;

private:
    CoeffMap h_;
    CoeffMap g_;

    static void check_index(int p);
};

/// kappa * cot t + gamma * csc t: the order-zero superpotential shape.
struct CotCsc {
    Rational cot_coeff;
    Rational csc_coeff;

    template <class Real>
    Real eval(const Real& theta) const {
        using std::cos;
        using std::sin;
        return (cot_coeff.to<Real>() * cos(theta) + csc_coeff.to<Real>()) / sin(theta);
    }
};

/// Pi_{j=0..k} (x + 1 - 2j) / (x - 2j). Throws DomainError if any x - 2j vanishes.
Rational ratio_I(const Rational& x, int k);

/// u * v folded into the SourceSeries basis.
SourceSeries trig_product_fold(const TrigPoly& u, const TrigPoly& v);

/// d/dt u in the SourceSeries basis.
SourceSeries trig_differentiate(const TrigPoly& u);

/// w0 * u.
SourceSeries multiply_cot_csc(const CotCsc& w0, const TrigPoly& u);
/// w0^2 (uses the p = 0 csc^2 slot).
SourceSeries cot_csc_square(const CotCsc& w0);
/// d/dt w0 (uses the p = 0 csc^2 slot).
SourceSeries cot_csc_derivative(const CotCsc& w0);

/// Integral from 0 to theta of sin^{2k-1} t dt, via the polynomial in cos theta.
template <class Real>
Real sin_odd_antiderivative(int k, const Real& theta);

double trig_eval(const TrigPoly& u, double theta);

// ---------------------------------------------------------------------------

template <class Real>
Real TrigPoly::eval(const Real& theta) const {
    using std::cos;
    using std::sin;
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Real s2 = s * s;
    // Horner in sin^2 over the common sin t factor.
    const int top = std::max(max_cos_index(), max_sin_index());
    Real acc_b = Real(0);
    Real acc_a = Real(0);
    for (int k = top; k >= 1; --k) {
        acc_b = acc_b * s2 + b(k).template to<Real>();
        acc_a = acc_a * s2 + a(k).template to<Real>();
    }
    return s * (acc_b + c * acc_a);
}

template <class Real>
Real SourceSeries::eval(const Real& theta) const {
    using std::cos;
    using std::sin;
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Real s2 = s * s;
    Real acc = Real(0);
    for (const auto& [p, v] : h_) {
        Real term = v.template to<Real>();
        for (int i = 0; i < p - 1; ++i) term *= s2;
        if (p == 0) term /= s2;
        acc += term;
    }
    for (const auto& [p, v] : g_) {
        Real term = v.template to<Real>() * c;
        for (int i = 0; i < p - 1; ++i) term *= s2;
        if (p == 0) term /= s2;
        acc += term;
    }
    return acc;
}

template <class Real>
Real sin_odd_antiderivative(int k, const Real& theta) {
    using std::acos;
    using std::cos;
    if (k < 1) throw DomainError("sin_odd_antiderivative: k must be positive, got " + std::to_string(k));
    const Real pi = acos(Real(-1));
    if (!(theta >= Real(0) && theta <= pi)) throw DomainError("sin_odd_antiderivative: theta outside [0, pi]");
    // int_0^theta sin^{2k-1} = int_{cos theta}^1 (1 - u^2)^{k-1} du
    //                        = sum_j C(k-1, j) (-1)^j (1 - cos^{2j+1} theta) / (2j+1)
    const Real c = cos(theta);
    Real binom = Real(1);
    Real cpow = c;
    Real total = Real(0);
    for (int j = 0; j <= k - 1; ++j) {
        const Real term = binom * (Real(1) - cpow) / Real(2 * j + 1);
        total += (j % 2 == 0) ? term : -term;
        binom = binom * Real(k - 1 - j) / Real(j + 1);
        cpow *= c * c;
    }
    return total;
}

}  // namespace swsh
