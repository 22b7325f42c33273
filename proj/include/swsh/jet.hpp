#pragma once

// Truncated Taylor series f(theta + t) = sum_{j<=K} c_j t^j.
//
// Used to differentiate ground states and ladder compositions analytically:
// every quantity is built from jets of sin and cos, so derivatives of any
// order come out exact up to rounding.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace swsh {

template <class Real>
class Jet {
public:
    Jet() = default;
    explicit Jet(int order, const Real& value = Real(0)) : c_(static_cast<std::size_t>(order + 1), Real(0)) {
        c_[0] = value;
    }

    static Jet variable(int order, const Real& at) {
        Jet j(order, at);
        if (order >= 1) j.c_[1] = Real(1);
        return j;
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Real& operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
    Real& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }

    Real value() const { return c_[0]; }
    /// k-th derivative at the expansion point.
    Real derivative_value(int k) const {
        Real f = Real(1);
        for (int i = 2; i <= k; ++i) f *= Real(i);
        return c_[static_cast<std::size_t>(k)] * f;
    }

    Jet truncated(int order) const {
        Jet out(order);
        for (int j = 0; j <= std::min(order, this->order()); ++j) out[j] = (*this)[j];
        return out;
    }

    /// d/dt; the result has one order less.
    Jet derivative() const {
        if (order() < 1) throw std::logic_error("Jet::derivative: order-0 jet");
        Jet out(order() - 1);
        for (int j = 0; j < order(); ++j) out[j] = (*this)[j + 1] * Real(j + 1);
        return out;
    }

    /// Antiderivative with the given value at the expansion point; one order more.
    Jet integral(const Real& at_point) const {
        Jet out(order() + 1, at_point);
        for (int j = 0; j <= order(); ++j) out[j + 1] = (*this)[j] / Real(j + 1);
        return out;
    }

    Jet& operator+=(const Jet& o) {
        for (int j = 0; j <= common(o); ++j) c_[static_cast<std::size_t>(j)] += o[j];
        shrink(o);
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int j = 0; j <= common(o); ++j) c_[static_cast<std::size_t>(j)] -= o[j];
        shrink(o);
        return *this;
    }
    Jet& operator*=(const Real& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    Jet& operator+=(const Real& s) {
        c_[0] += s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= Real(-1); }
    friend Jet operator*(Jet a, const Real& s) { return a *= s; }
    friend Jet operator*(const Real& s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, const Real& s) { return a += s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        const int k = std::min(a.order(), b.order());
        Jet out(k);
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; i + j <= k; ++j) out[i + j] += a[i] * b[j];
        }
        return out;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        const int k = std::min(a.order(), b.order());
        Jet out(k);
        for (int i = 0; i <= k; ++i) {
            Real acc = a[i];
            for (int j = 1; j <= i; ++j) acc -= b[j] * out[i - j];
            out[i] = acc / b[0];
        }
        return out;
    }

    friend Jet exp(const Jet& a) {
        using std::exp;
        // f' = a' f
        const int k = a.order();
        Jet out(k, exp(a[0]));
        for (int i = 1; i <= k; ++i) {
            Real acc = Real(0);
            for (int j = 1; j <= i; ++j) acc += Real(j) * a[j] * out[i - j];
            out[i] = acc / Real(i);
        }
        return out;
    }

private:
    std::vector<Real> c_;

    int common(const Jet& o) const { return std::min(order(), o.order()); }
    void shrink(const Jet& o) {
        if (o.order() < order()) c_.resize(static_cast<std::size_t>(o.order() + 1));
    }
};

/// Jets of sin and cos at theta.
template <class Real>
struct SinCosJet {
    Jet<Real> s;
    Jet<Real> c;

    SinCosJet(const Real& theta, int order) : s(order), c(order) {
        using std::cos;
        using std::sin;
        const Real st = sin(theta);
        const Real ct = cos(theta);
        // sin(theta + t) = st cos t + ct sin t
        Real fact = Real(1);
        for (int j = 0; j <= order; ++j) {
            if (j > 0) fact *= Real(j);
            const Real inv = Real(1) / fact;
            switch (j % 4) {
                case 0: s[j] = st * inv; c[j] = ct * inv; break;
                case 1: s[j] = ct * inv; c[j] = -st * inv; break;
                case 2: s[j] = -st * inv; c[j] = -ct * inv; break;
                default: s[j] = -ct * inv; c[j] = st * inv; break;
            }
        }
    }
};

}  // namespace swsh
