#include "swsh/trig_poly.hpp"

#include <sstream>

namespace swsh {

namespace detail {

void accumulate(CoeffMap& map, int key, const Rational& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = map.try_emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) map.erase(it);
    }
}

}  // namespace detail

namespace {

Rational lookup(const CoeffMap& map, int key) {
    const auto it = map.find(key);
    return it == map.end() ? Rational(0) : it->second;
}

CoeffMap scale_map(const CoeffMap& map, const Rational& s) {
    CoeffMap out;
    if (s.is_zero()) return out;
    for (const auto& [k, v] : map) out.emplace(k, v * s);
    return out;
}

}  // namespace

// --- TrigPoly ---------------------------------------------------------------

void TrigPoly::check_index(int k) {
    if (k < 1) throw DomainError("TrigPoly index must be >= 1, got " + std::to_string(k));
}

Rational TrigPoly::a(int k) const { return lookup(cos_, k); }
Rational TrigPoly::b(int k) const { return lookup(sin_, k); }

void TrigPoly::add_a(int k, const Rational& v) {
    check_index(k);
    detail::accumulate(cos_, k, v);
}

void TrigPoly::add_b(int k, const Rational& v) {
    check_index(k);
    detail::accumulate(sin_, k, v);
}

TrigPoly TrigPoly::scaled(const Rational& s) const {
    TrigPoly out;
    out.cos_ = scale_map(cos_, s);
    out.sin_ = scale_map(sin_, s);
    return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [k, v] : o.cos_) detail::accumulate(cos_, k, v);
    for (const auto& [k, v] : o.sin_) detail::accumulate(sin_, k, v);
    return *this;
}

// --- SourceSeries -----------------------------------------------------------

void SourceSeries::check_index(int p) {
    if (p < 0) throw DomainError("SourceSeries index must be >= 0, got " + std::to_string(p));
}

Rational SourceSeries::h(int p) const { return lookup(h_, p); }
Rational SourceSeries::g(int p) const { return lookup(g_, p); }

void SourceSeries::add_h(int p, const Rational& v) {
    check_index(p);
    detail::accumulate(h_, p, v);
}

void SourceSeries::add_g(int p, const Rational& v) {
    check_index(p);
    detail::accumulate(g_, p, v);
}

bool SourceSeries::is_constant() const {
    if (!g_.empty()) return false;
    return h_.empty() || (h_.size() == 1 && h_.begin()->first == 1);
}

SourceSeries SourceSeries::scaled(const Rational& s) const {
    SourceSeries out;
    out.h_ = scale_map(h_, s);
    out.g_ = scale_map(g_, s);
    return out;
}

SourceSeries& SourceSeries::operator+=(const SourceSeries& o) {
    for (const auto& [p, v] : o.h_) detail::accumulate(h_, p, v);
    for (const auto& [p, v] : o.g_) detail::accumulate(g_, p, v);
    return *this;
}

SourceSeries& SourceSeries::operator-=(const SourceSeries& o) {
    for (const auto& [p, v] : o.h_) detail::accumulate(h_, p, -v);
    for (const auto& [p, v] : o.g_) detail::accumulate(g_, p, -v);
    return *this;
}

std::string SourceSeries::describe() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](char tag, int p, const Rational& v) {
        if (!first) os << ", ";
        first = false;
        os << tag << p << '=' << v.str();
    };
    for (const auto& [p, v] : h_) emit('h', p, v);
    for (const auto& [p, v] : g_) emit('g', p, v);
    if (first) os << "0";
    return os.str();
}

// --- free operations --------------------------------------------------------

Rational ratio_I(const Rational& x, int k) {
    if (k < 0) throw DomainError("ratio_I: k must be nonnegative, got " + std::to_string(k));
    Rational out(1);
    for (int j = 0; j <= k; ++j) {
        const Rational den = x - Rational(2 * j);
        if (den.is_zero()) {
            throw DomainError("ratio_I(" + x.str() + ", " + std::to_string(k) + "): factor x - " +
                              std::to_string(2 * j) + " vanishes");
        }
        out *= (x + Rational(1 - 2 * j)) / den;
    }
    return out;
}

SourceSeries trig_product_fold(const TrigPoly& u, const TrigPoly& v) {
    SourceSeries out;
    // sin^{2i-1} sin^{2j-1} = sin^{2p-2} with p = i + j.
    for (const auto& [i, bu] : u.sin_part()) {
        for (const auto& [j, bv] : v.sin_part()) out.add_h(i + j, bu * bv);
        for (const auto& [j, av] : v.cos_part()) out.add_g(i + j, bu * av);
    }
    for (const auto& [i, au] : u.cos_part()) {
        for (const auto& [j, bv] : v.sin_part()) out.add_g(i + j, au * bv);
        // cos^2 sin^{2p-2} = sin^{2p-2} - sin^{2p}
        for (const auto& [j, av] : v.cos_part()) {
            const Rational prod = au * av;
            out.add_h(i + j, prod);
            out.add_h(i + j + 1, -prod);
        }
    }
    return out;
}

SourceSeries trig_differentiate(const TrigPoly& u) {
    SourceSeries out;
    for (const auto& [k, b] : u.sin_part()) out.add_g(k, b * Rational(2 * k - 1));
    // d/dt [cos sin^{2k-1}] = (2k-1) sin^{2k-2} - 2k sin^{2k}
    for (const auto& [k, a] : u.cos_part()) {
        out.add_h(k, a * Rational(2 * k - 1));
        out.add_h(k + 1, -a * Rational(2 * k));
    }
    return out;
}

SourceSeries multiply_cot_csc(const CotCsc& w0, const TrigPoly& u) {
    SourceSeries out;
    const Rational& kappa = w0.cot_coeff;
    const Rational& gamma = w0.csc_coeff;
    for (const auto& [k, b] : u.sin_part()) {
        out.add_g(k, kappa * b);
        out.add_h(k, gamma * b);
    }
    for (const auto& [k, a] : u.cos_part()) {
        out.add_h(k, kappa * a);
        out.add_h(k + 1, -kappa * a);
        out.add_g(k, gamma * a);
    }
    return out;
}

SourceSeries cot_csc_square(const CotCsc& w0) {
    const Rational& kappa = w0.cot_coeff;
    const Rational& gamma = w0.csc_coeff;
    SourceSeries out;
    out.add_h(0, kappa * kappa + gamma * gamma);
    out.add_g(0, Rational(2) * kappa * gamma);
    out.add_h(1, -kappa * kappa);
    return out;
}

SourceSeries cot_csc_derivative(const CotCsc& w0) {
    SourceSeries out;
    out.add_h(0, -w0.cot_coeff);
    out.add_g(0, -w0.csc_coeff);
    return out;
}

double trig_eval(const TrigPoly& u, double theta) { return u.eval(theta); }

}  // namespace swsh
