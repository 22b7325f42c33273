#include "swsh/series.hpp"

#include <algorithm>

#include "swsh/errors.hpp"

namespace swsh {

namespace {

constexpr const char* kModule = "series-engine";

int max_index(const SourceSeries& src) { return std::max(src.max_h_index(), src.max_g_index()); }

/// W_n index bounds: cos part up to floor(n/2), sin part up to floor((n+1)/2).
void check_order_bounds(int n, const TrigPoly& w, const char* operation) {
    const int cos_top = n / 2;
    const int sin_top = (n + 1) / 2;
    for (const auto& [k, v] : w.cos_part()) {
        if (k > cos_top) {
            throw VerificationError(kModule, operation, n,
                                    "a_{" + std::to_string(n) + "," + std::to_string(k) + "} = " + v.str() +
                                        " beyond index bound " + std::to_string(cos_top));
        }
    }
    for (const auto& [k, v] : w.sin_part()) {
        if (k > sin_top) {
            throw VerificationError(kModule, operation, n,
                                    "b_{" + std::to_string(n) + "," + std::to_string(k) + "} = " + v.str() +
                                        " beyond index bound " + std::to_string(sin_top));
        }
    }
}

/// e_{n,p} = (2m+2p)/(2m+2p-1) * (h_p - g_p/(2m+2p)).
Rational reduced_source(const SourceSeries& src, const Rational& m, int p) {
    const Rational two_m = Rational(2) * m;
    const Rational d = two_m + Rational(2 * p);
    return d / (d - Rational(1)) * (src.h(p) - src.g(p) / d);
}

void require_general_basis(int n, const SourceSeries& src, const char* operation) {
    if (src.h(0) != 0 || src.g(0) != 0 || src.g(1) != 0) {
        throw DomainError(std::string(kModule) + "::" + operation + " (n=" + std::to_string(n) +
                          "): source has csc^2 or bare-cos terms; only orders >= 2 use the general formula");
    }
}

}  // namespace

void validate_m(const Rational& m) {
    if (m.sign() <= 0) throw DomainError("m must be a positive rational, got " + m.str());
}

// --- SuperpotentialSeries ---------------------------------------------------

SuperpotentialSeries::SuperpotentialSeries(Rational m, CotCsc w0, Rational e0)
    : m_(std::move(m)), w0_(std::move(w0)), energy_{std::move(e0)} {}

const TrigPoly& SuperpotentialSeries::w(int n) const {
    if (n < 1 || n > order()) {
        throw StateError("W_" + std::to_string(n) + " not built (series order " + std::to_string(order()) + ")");
    }
    return w_[static_cast<std::size_t>(n - 1)];
}

const Rational& SuperpotentialSeries::energy(int n) const {
    if (n < 0 || n > order()) {
        throw StateError("E_{0," + std::to_string(n) + "} not built (series order " + std::to_string(order()) + ")");
    }
    return energy_[static_cast<std::size_t>(n)];
}

void SuperpotentialSeries::append(TrigPoly wn, Rational en) {
    w_.push_back(std::move(wn));
    energy_.push_back(std::move(en));
}

// --- seeds ------------------------------------------------------------------

Order0 seed_order0(const Rational& m) {
    validate_m(m);
    const Rational half(1, 2);
    return Order0{CotCsc{-(m + half), -half}, m * m + m - Rational(3, 4)};
}

OrderSolution seed_order1(const Rational& m) {
    validate_m(m);
    const Rational e1 = Rational(-1) / (Rational(2) * m + Rational(2));
    TrigPoly w1;
    w1.add_b(1, e1);
    return OrderSolution{std::move(w1), e1};
}

SourceSeries potential_source(int n, const Rational& m) {
    const Rational s = spin_weight();
    const Rational quarter(1, 4);
    SourceSeries out;
    switch (n) {
        case 0:
            // E + s + 1/4 - ((m + s cos)^2 - 1/4) / sin^2, without E
            out.add_h(0, -(m * m + s * s - quarter));
            out.add_g(0, Rational(-2) * m * s);
            out.add_h(1, s + quarter + s * s);
            break;
        case 1:
            out.add_g(1, Rational(-2) * s);
            break;
        case 2:
            out.add_h(1, Rational(1));
            out.add_h(2, Rational(-1));
            break;
        default:
            break;
    }
    return out;
}

SourceSeries source_series(int n, const SuperpotentialSeries& prior) {
    if (n < 2) throw DomainError("source_series: order must be >= 2, got " + std::to_string(n));
    if (prior.order() < n - 1) {
        throw StateError("source_series(n=" + std::to_string(n) + "): W_" + std::to_string(prior.order() + 1) +
                         " missing");
    }
    SourceSeries src;
    for (int k = 1; k <= n - 1; ++k) src += trig_product_fold(prior.w(k), prior.w(n - k));
    if (n == 2) src += potential_source(2, prior.m());

    const int g_top = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
    const int h_top = (n % 2 == 0) ? n / 2 + 1 : (n + 1) / 2;
    if (src.max_g_index() > g_top || src.max_h_index() > h_top) {
        throw VerificationError(kModule, "source_series", n, "vanishing bounds violated: " + src.describe());
    }
    return src;
}

Rational energy_correction(int n, const SourceSeries& src, const Rational& m) {
    require_general_basis(n, src, "energy_correction");
    const Rational two_m = Rational(2) * m;
    Rational sum(0);
    for (int p = 2; p <= max_index(src); ++p) {
        const Rational e = reduced_source(src, m, p);
        if (e.is_zero()) continue;
        sum += e * (two_m + Rational(1)) * ratio_I(two_m + Rational(2 * p), p - 1) / (two_m + Rational(2 * p + 1));
    }
    return -sum - src.constant();
}

TrigPoly superpotential_order(int n, const SourceSeries& src, const Rational& energy, const Rational& m) {
    require_general_basis(n, src, "superpotential_order");
    const Rational two_m = Rational(2) * m;
    const int top = std::max(n / 2 + 1, max_index(src));

    std::vector<Rational> e(static_cast<std::size_t>(top + 1));
    for (int p = 2; p <= top; ++p) e[static_cast<std::size_t>(p)] = reduced_source(src, m, p);

    std::vector<Rational> a(static_cast<std::size_t>(top + 1));
    for (int l = 1; l <= top; ++l) {
        Rational acc(0);
        for (int p = l + 1; p <= top; ++p) {
            const Rational& ep = e[static_cast<std::size_t>(p)];
            if (ep.is_zero()) continue;
            acc += ep * (two_m + Rational(2 * l)) * ratio_I(two_m + Rational(2 * p), p - l) /
                   ((two_m + Rational(2 * l + 1)) * (two_m + Rational(2 * p + 1)));
        }
        a[static_cast<std::size_t>(l)] = -acc;
    }

    TrigPoly w;
    // The p = 1 constant of the source enters exactly like E.
    w.add_b(1, a[1] - (energy + src.constant()) / (two_m + Rational(1)));
    for (int l = 2; l <= top; ++l) {
        const auto li = static_cast<std::size_t>(l);
        w.add_b(l, a[li] - a[li - 1] + (src.g(l) - src.h(l)) / (two_m + Rational(2 * l - 1)));
    }
    for (int l = 1; l <= top; ++l) w.add_a(l, a[static_cast<std::size_t>(l)]);

    check_order_bounds(n, w, "superpotential_order");
    return w;
}

OrderSolution match_order(int n, const SourceSeries& src, const Rational& m) {
    if (src.h(0) != 0 || src.g(0) != 0) {
        throw DomainError("match_order: source has csc^2 terms (order 0 is seeded in closed form)");
    }
    const Rational two_m = Rational(2) * m;
    const int top = std::max(1, max_index(src));
    std::vector<Rational> a(static_cast<std::size_t>(top + 1));
    std::vector<Rational> b(static_cast<std::size_t>(top + 1));
    for (int p = top; p >= 1; --p) {
        const auto pi = static_cast<std::size_t>(p);
        const Rational d = two_m + Rational(2 * p);
        b[pi] = (src.g(p) - a[pi]) / d;
        if (p >= 2) a[pi - 1] = (b[pi] + d * a[pi] - src.h(p)) / (d - Rational(1));
    }
    OrderSolution out;
    out.energy = b[1] + (two_m + Rational(2)) * a[1] - src.h(1);
    for (int p = 1; p <= top; ++p) {
        out.w.add_a(p, a[static_cast<std::size_t>(p)]);
        out.w.add_b(p, b[static_cast<std::size_t>(p)]);
    }
    check_order_bounds(n, out.w, "match_order");
    return out;
}

// --- build + verification ---------------------------------------------------

SuperpotentialSeries build_series(const Rational& m, int order) {
    validate_m(m);
    if (order < 0) throw DomainError("series order must be nonnegative, got " + std::to_string(order));

    const Order0 o0 = seed_order0(m);
    SuperpotentialSeries series(m, o0.w0, o0.energy);

    if (order >= 1) {
        OrderSolution o1 = seed_order1(m);
        const OrderSolution matched = match_order(1, potential_source(1, m), m);
        if (!(matched.w == o1.w) || matched.energy != o1.energy) {
            throw VerificationError(kModule, "seed_order1", 1, "closed form disagrees with coefficient matching");
        }
        series.append(std::move(o1.w), std::move(o1.energy));
    }
    if (order >= 2) {
        const SourceSeries src = source_series(2, series);
        OrderSolution direct = match_order(2, src, m);
        const Rational folded_energy = energy_correction(2, src, m);
        const TrigPoly folded_w = superpotential_order(2, src, folded_energy, m);
        if (!(folded_w == direct.w) || folded_energy != direct.energy) {
            throw VerificationError(kModule, "build_series", 2,
                                    "folded general path disagrees with direct matching: E " + folded_energy.str() +
                                        " vs " + direct.energy.str());
        }
        series.append(std::move(direct.w), std::move(direct.energy));
    }
    for (int n = 3; n <= order; ++n) {
        const SourceSeries src = source_series(n, series);
        Rational en = energy_correction(n, src, m);
        TrigPoly wn = superpotential_order(n, src, en, m);
        series.append(std::move(wn), std::move(en));
    }

    for (int n = 0; n <= order; ++n) {
        const SourceSeries residual = riccati_residual(series, n);
        if (!residual.is_zero()) {
            throw VerificationError(kModule, "riccati_residual", n, "nonzero residual " + residual.describe());
        }
    }
    const IdentityReport identities = crosscheck_identities(series);
    if (!identities.all_hold()) {
        const IdentityCheck& bad = identities.failures().front();
        throw VerificationError(kModule, "crosscheck_identities", bad.n,
                                bad.identity + " at l=" + std::to_string(bad.l) + ": " + bad.lhs.str() +
                                    " != " + bad.rhs.str());
    }
    return series;
}

SourceSeries riccati_residual(const SuperpotentialSeries& series, int n,
                              const std::optional<Rational>& energy_override) {
    if (n < 0 || n > series.order()) {
        throw StateError("riccati_residual: order " + std::to_string(n) + " not built");
    }
    const Rational energy = energy_override.value_or(series.energy(n));

    SourceSeries source = potential_source(n, series.m());
    source.add_h(1, energy);

    SourceSeries lhs;
    if (n == 0) {
        lhs = cot_csc_derivative(series.w0()) - cot_csc_square(series.w0());
    } else {
        for (int k = 1; k <= n - 1; ++k) source += trig_product_fold(series.w(k), series.w(n - k));
        lhs = trig_differentiate(series.w(n)) - multiply_cot_csc(series.w0(), series.w(n)).scaled(Rational(2));
    }
    return lhs - source;
}

bool IdentityReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds(); });
}

std::vector<IdentityCheck> IdentityReport::failures() const {
    std::vector<IdentityCheck> out;
    std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
                 [](const IdentityCheck& c) { return !c.holds(); });
    return out;
}

IdentityReport crosscheck_identities(const SuperpotentialSeries& series) {
    IdentityReport report;
    const Rational& m = series.m();
    const Rational two_m = Rational(2) * m;
    for (int n = 1; n <= series.order(); ++n) {
        const TrigPoly& w = series.w(n);
        report.checks.push_back({"cos-index-bound", n, n / 2, Rational(std::min(w.max_cos_index(), n / 2)),
                                 Rational(w.max_cos_index())});
        report.checks.push_back({"sin-index-bound", n, (n + 1) / 2,
                                 Rational(std::min(w.max_sin_index(), (n + 1) / 2)), Rational(w.max_sin_index())});
        if (n < 2) continue;
        const SourceSeries src = source_series(n, series);
        for (int l = 2; l <= n / 2 + 1; ++l) {
            report.checks.push_back(
                {"b_nl=(g_nl-a_nl)/(2m+2l)", n, l, w.b(l), (src.g(l) - w.a(l)) / (two_m + Rational(2 * l))});
        }
        if (n >= 3) {
            report.checks.push_back({"a_n1=(2m+2)E_0n/((2m+1)(2m+3))", n, 1, w.a(1),
                                     (two_m + Rational(2)) * series.energy(n) /
                                         ((two_m + Rational(1)) * (two_m + Rational(3)))});
        }
    }
    return report;
}

}  // namespace swsh
