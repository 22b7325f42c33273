#include "swsh/shape_invariance.hpp"

#include <algorithm>
#include <cmath>

#include "swsh/closed_forms.hpp"

namespace swsh {

namespace {

constexpr const char* kModule = "shape-invariance";

Rational lookup_or_one(const std::map<ShapeParamSet::Key, Rational>& map, int n, int j) {
    const auto it = map.find({n, j});
    return it == map.end() ? Rational(1) : it->second;
}

/// (2m+1) A00 and B00 recovered from the order-zero cot/csc coefficients.
struct Order0Params {
    Rational x;    // (2m+1) A00 = -2 kappa
    Rational b00;  // -2 gamma
};

Order0Params order0_params(const EffectiveSuperpotential& eff) {
    return {Rational(-2) * eff.w0.cot_coeff, Rational(-2) * eff.w0.csc_coeff};
}

Rational abar(const EffectiveSuperpotential& eff, int n, int j) {
    if (j < 1 || n < 1 || n > eff.order()) return Rational(0);
    return eff.w(n).a(j);
}

Rational bbar(const EffectiveSuperpotential& eff, int n, int j) {
    if (j < 1 || n < 1 || n > eff.order()) return Rational(0);
    return eff.w(n).b(j);
}

// Highest p touched by order-n partner pieces.
int partner_top(int n) { return n / 2 + 2; }

// P-/+_{n,p} and Q-/+_{n,p}; sign = -1 for the minus partner, +1 for plus.
Rational p_coeff(const EffectiveSuperpotential& eff, int n, int p, int sign) {
    const auto [x, b00] = order0_params(eff);
    return -b00 * abar(eff, n, p) + (Rational(sign * (2 * p - 1)) - x) * bbar(eff, n, p);
}

Rational q_coeff(const EffectiveSuperpotential& eff, int n, int p, int sign) {
    const auto [x, b00] = order0_params(eff);
    return -b00 * bbar(eff, n, p) + (Rational(sign * (2 * p - 1)) - x) * abar(eff, n, p) +
           (Rational(-sign * (2 * p - 2)) + x) * abar(eff, n, p - 1);
}

struct MatchTargets {
    std::map<int, Rational> u;      // cos-part targets U_{n,p}
    std::map<int, Rational> u_chk;  // constant/sin-part targets U-check_{n,p}
};

// U_{n,p} = G_p(A) - G_p(C) + P+_p(A),  U-check_{n,p} = H_p(A) - H_p(C) + Q+_p(A).
MatchTargets match_targets(const EffectiveSuperpotential& from, const EffectiveSuperpotential& to_lower, int n) {
    const SourceSeries conv_from = partner::convolution_terms(from, n);
    const SourceSeries conv_to = partner::convolution_terms(to_lower, n);
    MatchTargets t;
    for (int p = 1; p <= partner_top(n); ++p) {
        t.u[p] = conv_from.g(p) - conv_to.g(p) + p_coeff(from, n, p, +1);
        t.u_chk[p] = conv_from.h(p) - conv_to.h(p) + q_coeff(from, n, p, +1);
    }
    return t;
}

void require_pivot(const Rational& v, int n, int p, const std::string& what) {
    if (v.is_zero()) throw SingularFlowError(n, p, what);
}

}  // namespace

// --- ShapeParamSet ----------------------------------------------------------

Rational ShapeParamSet::a_scale(int n, int j) const { return lookup_or_one(a, n, j); }
Rational ShapeParamSet::b_scale(int n, int j) const { return lookup_or_one(b, n, j); }

void ShapeParamSet::set_a(int n, int j, const Rational& v) {
    if (n < 2 || j < 1 || j > n / 2) {
        throw DomainError("A_{" + std::to_string(n) + "," + std::to_string(j) + "} outside index bounds");
    }
    if (v == 1) a.erase({n, j}); else a[{n, j}] = v;
}

void ShapeParamSet::set_b(int n, int j, const Rational& v) {
    if (n < 1 || j < 1 || j > (n + 1) / 2) {
        throw DomainError("B_{" + std::to_string(n) + "," + std::to_string(j) + "} outside index bounds");
    }
    if (v == 1) b.erase({n, j}); else b[{n, j}] = v;
}

EffectiveSuperpotential ShapeParamSet::apply(const SuperpotentialSeries& series, int order) const {
    if (order > series.order()) {
        throw StateError("parameter set applied at order " + std::to_string(order) + " beyond series order " +
                         std::to_string(series.order()));
    }
    const Rational half(1, 2);
    EffectiveSuperpotential eff{series.m(), CotCsc{-a00 * (series.m() + half), -half * b00}, {}};
    for (int n = 1; n <= order; ++n) {
        TrigPoly wn;
        for (const auto& [j, v] : series.w(n).cos_part()) wn.add_a(j, a_scale(n, j) * v);
        for (const auto& [j, v] : series.w(n).sin_part()) wn.add_b(j, b_scale(n, j) * v);
        eff.orders.push_back(std::move(wn));
    }
    return eff;
}

ShapeParamSet ShapeParamSet::from_effective(const EffectiveSuperpotential& eff, const SuperpotentialSeries& series) {
    const Rational two_m1 = Rational(2) * series.m() + Rational(1);
    const auto [x, b00] = order0_params(eff);
    ShapeParamSet out;
    out.a00 = x / two_m1;
    out.b00 = b00;
    for (int n = 1; n <= eff.order(); ++n) {
        const TrigPoly& base = series.w(n);
        const TrigPoly& w = eff.w(n);
        for (int j = 1; j <= std::max(w.max_cos_index(), base.max_cos_index()); ++j) {
            const Rational e = w.a(j);
            const Rational b = base.a(j);
            if (b.is_zero()) {
                if (!e.is_zero()) throw SingularFlowError(n, j, "physical a coefficient is zero, flowed one is not");
                continue;
            }
            out.set_a(n, j, e / b);
        }
        for (int j = 1; j <= std::max(w.max_sin_index(), base.max_sin_index()); ++j) {
            const Rational e = w.b(j);
            const Rational b = base.b(j);
            if (b.is_zero()) {
                if (!e.is_zero()) throw SingularFlowError(n, j, "physical b coefficient is zero, flowed one is not");
                continue;
            }
            out.set_b(n, j, e / b);
        }
    }
    return out;
}

// --- partner potentials -----------------------------------------------------

namespace partner {

SourceSeries convolution_terms(const EffectiveSuperpotential& eff, int n) {
    SourceSeries out;
    for (int p = 2; p <= partner_top(n); ++p) {
        Rational g(0), h(0);
        for (int k = 1; k <= n - 1; ++k) {
            for (int j = 1; j <= p - 1; ++j) {
                g += bbar(eff, k, p - j) * abar(eff, n - k, j) + abar(eff, k, p - j) * bbar(eff, n - k, j);
                h += bbar(eff, k, p - j) * bbar(eff, n - k, j) + abar(eff, k, p - j) * abar(eff, n - k, j) -
                     abar(eff, k, p - 1 - j) * abar(eff, n - k, j);
            }
        }
        out.add_g(p, g);
        out.add_h(p, h);
    }
    return out;
}

PartnerOrder by_formula(const EffectiveSuperpotential& eff, int n) {
    PartnerOrder out;
    if (n == 0) {
        // W0^2 -/+ W0' with kappa = -x/2, gamma = -B00/2.
        const auto [x, b00] = order0_params(eff);
        const Rational quarter(1, 4);
        const Rational sq = quarter * (x * x + b00 * b00);
        const Rational cross = Rational(1, 2) * x * b00;
        out.vminus.add_h(0, sq - Rational(1, 2) * x);
        out.vminus.add_g(0, cross - Rational(1, 2) * b00);
        out.vplus.add_h(0, sq + Rational(1, 2) * x);
        out.vplus.add_g(0, cross + Rational(1, 2) * b00);
        out.vminus.add_h(1, -quarter * x * x);
        out.vplus.add_h(1, -quarter * x * x);
        return out;
    }
    const SourceSeries conv = convolution_terms(eff, n);
    out.vminus = conv;
    out.vplus = conv;
    for (int p = 1; p <= partner_top(n); ++p) {
        out.vminus.add_g(p, p_coeff(eff, n, p, -1));
        out.vminus.add_h(p, q_coeff(eff, n, p, -1));
        out.vplus.add_g(p, p_coeff(eff, n, p, +1));
        out.vplus.add_h(p, q_coeff(eff, n, p, +1));
    }
    return out;
}

PartnerOrder direct(const EffectiveSuperpotential& eff, int n) {
    PartnerOrder out;
    if (n == 0) {
        const SourceSeries sq = cot_csc_square(eff.w0);
        const SourceSeries d = cot_csc_derivative(eff.w0);
        out.vminus = sq - d;
        out.vplus = sq + d;
        return out;
    }
    SourceSeries base;
    for (int k = 1; k <= n - 1; ++k) base += trig_product_fold(eff.w(k), eff.w(n - k));
    base += multiply_cot_csc(eff.w0, eff.w(n)).scaled(Rational(2));
    const SourceSeries d = trig_differentiate(eff.w(n));
    out.vminus = base - d;
    out.vplus = base + d;
    return out;
}

}  // namespace partner

PartnerOrder partner_potential_order(const EffectiveSuperpotential& eff, int n) {
    if (n < 0 || n > eff.order()) throw StateError("partner_potential_order: order " + std::to_string(n) + " not built");
    PartnerOrder formula = partner::by_formula(eff, n);
    const PartnerOrder direct = partner::direct(eff, n);
    if (!(formula.vminus == direct.vminus)) {
        throw VerificationError(kModule, "partner_potential_order", n,
                                "V- paths differ: formula " + formula.vminus.describe() + " vs direct " +
                                    direct.vminus.describe());
    }
    if (!(formula.vplus == direct.vplus)) {
        throw VerificationError(kModule, "partner_potential_order", n,
                                "V+ paths differ: formula " + formula.vplus.describe() + " vs direct " +
                                    direct.vplus.describe());
    }
    return formula;
}

PartnerOrder partner_potential_order(const ShapeParamSet& params, const SuperpotentialSeries& series, int n) {
    return partner_potential_order(params.apply(series, n), n);
}

// --- flow solving -----------------------------------------------------------

FlowStep solve_flow_step(const EffectiveSuperpotential& from, const SuperpotentialSeries& series, int order) {
    if (order < 0) throw DomainError("flow order must be nonnegative");
    if (order > from.order() || order > series.order()) {
        throw StateError("solve_flow_step: order " + std::to_string(order) + " exceeds built orders");
    }
    const Rational& m = series.m();
    FlowStep step;
    step.from_eff = from;
    step.from_eff.orders.resize(static_cast<std::size_t>(order));

    // Order 0: C00 = A00 + 2/(2m+1), D00 = B00, i.e. kappa -> kappa - 1.
    const auto [x, b00] = order0_params(from);
    EffectiveSuperpotential to{m, CotCsc{from.w0.cot_coeff - Rational(1), from.w0.csc_coeff}, {}};
    const Rational xc = x + Rational(2);  // (2m+1) C00
    const Rational& d00 = b00;
    step.remainder.push_back(x + Rational(1));

    for (int n = 1; n <= order; ++n) {
        const MatchTargets t = match_targets(step.from_eff, to, n);
        const int top = n / 2 + 1;
        const int sin_top = (n + 1) / 2;
        std::map<int, Rational> c, d;  // flowed cos (cbar) and sin (dbar) coefficients
        c[top] = Rational(0);
        Rational rn;
        for (int p = top; p >= 1; --p) {
            const Rational alpha = xc + Rational(2 * p - 1);
            step.alpha[p] = alpha;
            require_pivot(alpha, n, p, "alpha_p vanishes");
            Rational dp = -(t.u.at(p) + d00 * c[p]) / alpha;
            if (p > sin_top) {
                if (!dp.is_zero()) {
                    throw VerificationError(kModule, "solve_flow_step", n,
                                            "top-index consistency: d_{" + std::to_string(n) + "," +
                                                std::to_string(p) + "} = " + dp.str() + " must vanish");
                }
                dp = Rational(0);
            }
            d[p] = dp;
            const Rational rhs = t.u_chk.at(p) + d00 * dp + alpha * c[p];
            if (p >= 2) {
                require_pivot(alpha - Rational(1), n, p, "alpha_p - 1 vanishes");
                c[p - 1] = rhs / (alpha - Rational(1));
            } else {
                rn = rhs;
            }
        }
        TrigPoly wn;
        for (const auto& [p, v] : c) {
            if (p <= n / 2) wn.add_a(p, v);
            else if (!v.is_zero()) {
                throw VerificationError(kModule, "solve_flow_step", n,
                                        "top-index consistency: c_{" + std::to_string(n) + "," + std::to_string(p) +
                                            "} = " + v.str() + " must vanish");
            }
        }
        for (const auto& [p, v] : d) {
            if (p <= sin_top) wn.add_b(p, v);
        }
        to.orders.push_back(std::move(wn));
        step.remainder.push_back(rn);

        // Re-check with the direct algebra: V+_n(from) - V-_n(to) must be the constant R_n.
        const SourceSeries diff = partner::direct(step.from_eff, n).vplus - partner::direct(to, n).vminus;
        if (!diff.is_constant() || diff.constant() != rn) {
            throw VerificationError(kModule, "solve_flow_step", n,
                                    "V+ - V- not the constant R_n = " + rn.str() + ": " + diff.describe());
        }
    }
    step.to_eff = to;
    step.from = ShapeParamSet::from_effective(step.from_eff, series);
    step.to = ShapeParamSet::from_effective(step.to_eff, series);
    return step;
}

FlowStep solve_flow_step(const ShapeParamSet& params, const SuperpotentialSeries& series, int order) {
    return solve_flow_step(params.apply(series, order), series, order);
}

bool InvarianceReport::all_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](const InvarianceRow& r) { return r.exact; });
}

InvarianceReport verify_invariance(const FlowStep& step, const std::vector<double>& grid) {
    InvarianceReport report;
    for (int n = 0; n <= step.order(); ++n) {
        const SourceSeries diff = partner_potential_order(step.from_eff, n).vplus -
                                  partner_potential_order(step.to_eff, n).vminus;
        InvarianceRow row;
        row.n = n;
        row.constant = diff.constant();
        const Rational rn = step.remainder[static_cast<std::size_t>(n)];
        row.exact = diff.is_constant() && diff.constant() == rn;
        double dev = 0.0;
        for (const double t : grid) {
            // Evaluated as separate potentials so the floating check is not a restatement of `diff`.
            const double vp = partner::direct(step.from_eff, n).vplus.eval(t);
            const double vm = partner::direct(step.to_eff, n).vminus.eval(t);
            dev = std::max(dev, std::abs(vp - vm - rn.to_double()));
        }
        row.float_deviation = dev;
        if (!row.exact) {
            throw VerificationError(kModule, "verify_invariance", n,
                                    "V+ - V- = " + diff.describe() + ", expected constant " + rn.str());
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<FlowStep> flow_chain(const SuperpotentialSeries& series, int levels, int order) {
    if (levels < 0) throw DomainError("level must be nonnegative");
    std::vector<FlowStep> chain;
    EffectiveSuperpotential current = EffectiveSuperpotential::physical(series, order);
    for (int k = 1; k <= std::max(levels, 1); ++k) {
        chain.push_back(solve_flow_step(current, series, order));
        current = chain.back().to_eff;
    }
    return chain;
}

std::vector<Rational> excited_energy(const SuperpotentialSeries& series, int level, int order) {
    if (level < 0) throw DomainError("level must be nonnegative");
    if (order > series.order()) throw StateError("excited_energy: order beyond series");
    std::vector<Rational> e(series.energies().begin(), series.energies().begin() + order + 1);
    if (level == 0) return e;
    for (const FlowStep& step : flow_chain(series, level, order)) {
        for (int n = 0; n <= order; ++n) e[static_cast<std::size_t>(n)] += step.remainder[static_cast<std::size_t>(n)];
    }
    return e;
}

std::vector<Rational> excited_energy(const Rational& m, int level, int order) {
    return excited_energy(build_series(m, order), level, order);
}

Evaluable<double> excited_wavefunction(const Rational& m, int level, double beta, int order) {
    const SuperpotentialSeries series = build_series(m, order);
    return excited_wavefunction<double>(flow_chain(series, level, order), level, beta);
}

// --- printed reference comparisons ------------------------------------------

std::vector<ReferenceComparison> compare_printed_flow(const FlowStep& step, const SuperpotentialSeries& series) {
    if (step.order() < 2) throw StateError("compare_printed_flow needs a step solved through order 2");
    const Rational& m = series.m();
    const ShapeParamSet& P = step.from;
    const ShapeParamSet& Q = step.to;
    std::vector<ReferenceComparison> out;

    const auto bare = closed_forms::printed_flow(m, P.a00, P.b00, P.b_scale(1, 1), P.b_scale(2, 1), P.a_scale(2, 1));
    const auto full = closed_forms::printed_flow(m, P.a00, P.b00, bbar(step.from_eff, 1, 1), bbar(step.from_eff, 2, 1),
                                                 abar(step.from_eff, 2, 1));
    const std::string kBare = "bare scale factors";
    const std::string kFull = "full coefficients";

    out.push_back({"C00", "as printed", bare.c00, Q.a00});
    out.push_back({"D00", "as printed", bare.d00, Q.b00});
    out.push_back({"R0", "as printed", bare.r0, step.remainder[0]});
    out.push_back({"D11", kBare, bare.d11_factor * P.b_scale(1, 1), Q.b_scale(1, 1)});
    out.push_back({"D11", kFull, full.d11_factor * bbar(step.from_eff, 1, 1), bbar(step.to_eff, 1, 1)});
    out.push_back({"R1", kBare, bare.r1, step.remainder[1]});
    out.push_back({"R1", kFull, full.r1, step.remainder[1]});
    out.push_back({"D21", kBare, bare.d21, Q.b_scale(2, 1)});
    out.push_back({"D21", kFull, full.d21, bbar(step.to_eff, 2, 1)});
    out.push_back({"C21", kBare, bare.c21, Q.a_scale(2, 1)});
    out.push_back({"C21", kFull, full.c21, abar(step.to_eff, 2, 1)});
    out.push_back({"R2", kBare, bare.r2, step.remainder[2]});
    out.push_back({"R2", kFull, full.r2, step.remainder[2]});
    return out;
}

UpdateFormulaCheck check_printed_update_formulas(const FlowStep& step, const SuperpotentialSeries& series) {
    UpdateFormulaCheck out;
    const auto [x, b00] = order0_params(step.from_eff);
    const Rational xc = x + Rational(2);
    const Rational& d00 = b00;
    EffectiveSuperpotential lower = step.to_eff;
    for (int n = 1; n <= step.order(); ++n) {
        lower.orders.resize(static_cast<std::size_t>(n - 1));
        const MatchTargets t = match_targets(step.from_eff, lower, n);
        for (int p = 1; p <= n / 2 + 1; ++p) {
            const Rational alpha = xc + Rational(2 * p - 1);
            const Rational a_np = series.w(n).a(p);
            const Rational b_np = series.w(n).b(p);
            const Rational a_nm = series.w(n).a(p - 1);
            const Rational c_p = step.to.a_scale(n, p);
            const Rational cp_eff = a_np.is_zero() ? Rational(0) : c_p;  // C_{n,p} a_{n,p} vanishes at the top
            if (!b_np.is_zero()) {
                ++out.evaluated;
                // D_{n,p} = D00 a C / (alpha b) - U / (alpha b), as printed.
                const Rational printed = d00 * a_np * cp_eff / (alpha * b_np) - t.u.at(p) / (alpha * b_np);
                if (printed != step.to.b_scale(n, p)) {
                    ++out.d_mismatches;
                    if (out.details.size() < 6) {
                        out.details.push_back("D_{" + std::to_string(n) + "," + std::to_string(p) + "}: printed " +
                                              printed.str() + ", solved " + step.to.b_scale(n, p).str());
                    }
                }
            }
            if (p >= 2 && !a_nm.is_zero()) {
                ++out.evaluated;
                const Rational denom = (alpha - Rational(1)) * a_nm;
                const Rational printed = (alpha + d00 * d00 / alpha) * a_np * cp_eff / denom +
                                         (t.u_chk.at(p) - d00 / alpha * t.u.at(p)) / denom;
                if (printed != step.to.a_scale(n, p - 1)) {
                    ++out.c_mismatches;
                    if (out.details.size() < 6) {
                        out.details.push_back("C_{" + std::to_string(n) + "," + std::to_string(p - 1) + "}: printed " +
                                              printed.str() + ", solved " + step.to.a_scale(n, p - 1).str());
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace swsh
