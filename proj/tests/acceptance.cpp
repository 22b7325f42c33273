// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "riccati_oracle.hpp"
#include "swsh/closed_forms.hpp"
#include "swsh/eigenfunction.hpp"
#include "swsh/oracle.hpp"
#include "swsh/shape_invariance.hpp"
#include "swsh/verify.hpp"

namespace {

using swsh::Rational;
namespace cf = swsh::closed_forms;

constexpr double kPi = std::numbers::pi;

const std::vector<Rational> kGoldenM = {Rational(1, 2), Rational(3, 2), Rational(5, 2), Rational(7, 2)};
const std::vector<Rational> kAllM = {Rational(1, 2), Rational(3, 2), Rational(5, 2), Rational(7, 2), Rational(9, 2)};

struct Check {
    bool ok = true;
    std::string note;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) note = what;
        ok = ok && condition;
    }
};

bool has_notice(const swsh::io::Json& report, const std::string& quantity, const Rational& printed) {
    for (const auto& n : report["notices"]) {
        if (n["quantity"] == quantity && n["class"] == "PAPER-DIVERGENCE" && n["printed"] == printed.str()) return true;
    }
    return false;
}

double loglog(const std::vector<double>& x, const std::vector<double>& y) { return swsh::loglog_slope(x, y); }

Check ac1() {
    Check c;
    for (const Rational& m : kGoldenM) {
        const auto s = swsh::build_series(m, 4);
        for (int n = 1; n <= 4; ++n) c.expect(s.w(n) == cf::printed_w(n, m), "W_" + std::to_string(n) + " at m=" + m.str());
        c.expect(s.energy(1) == Rational(-1) / (Rational(2) * m + Rational(2)), "E_{0,1} closed form at m=" + m.str());
        for (const int n : {1, 3, 4}) c.expect(s.energy(n) == cf::printed_energy(n, m), "E_{0," + std::to_string(n) + "} at m=" + m.str());
    }
    return c;
}

Check ac2() {
    Check c;
    for (const Rational& m : kAllM) {
        const auto s = swsh::build_series(m, 12);
        for (int n = 0; n <= 12; ++n) {
            c.expect(swsh::riccati_residual(s, n).is_zero(), "riccati_residual n=" + std::to_string(n) + " m=" + m.str());
            if (n == 0) continue;
            for (const auto& p : swsh::testing::rational_points()) {
                c.expect(swsh::testing::pointwise_residual(s, n, p) == 0,
                         "pointwise residual n=" + std::to_string(n) + " m=" + m.str());
            }
        }
    }
    return c;
}

Check ac3() {
    Check c;
    for (const Rational& m : kGoldenM) {
        const auto s = swsh::build_series(m, 2);
        const Rational two_m2 = Rational(2) * m + Rational(2);
        const Rational matched = -(Rational(4) * m * m + Rational(10) * m + Rational(5)) / two_m2.pow(3);
        const Rational printed = -(Rational(4) * m * m + Rational(10) * m - Rational(5)) / two_m2.pow(3);
        c.expect(s.energy(2) == matched, "E_{0,2} matched value at m=" + m.str());
        c.expect(cf::printed_energy(2, m) == printed, "printed E_{0,2} transcription at m=" + m.str());
    }
    c.expect(swsh::build_series(Rational(1, 2), 2).energy(2) == Rational(-11, 27), "E_{0,2}(1/2) = -11/27");
    std::vector<double> samples;
    for (int i = -10; i <= 10; ++i) samples.push_back(0.005 * i);
    const auto fit = swsh::series_fit(Rational(1, 2), 8, samples);
    c.expect(std::abs(fit[2] + 11.0 / 27.0) <= 1e-6, "series_fit order-2 estimate");
    swsh::verify::Options opt;
    opt.order = 8;
    const auto out = swsh::verify::run(opt);
    c.expect(has_notice(out.report, "E_{0,2}", Rational(-1, 27)), "verify E_{0,2} PAPER-DIVERGENCE notice");
    return c;
}

Check ac4() {
    Check c;
    for (const Rational& m : kAllM) {
        const auto s = swsh::build_series(m, 12);
        c.expect(swsh::crosscheck_identities(s).all_hold(), "crosscheck_identities at m=" + m.str());
        for (int n = 1; n <= 12; ++n) {
            const auto& w = s.w(n);
            const std::string at = " n=" + std::to_string(n) + " m=" + m.str();
            if (n >= 2) {
                const auto src = swsh::source_series(n, s);
                for (int l = 2; l <= n / 2 + 1; ++l) {
                    c.expect(w.b(l) == (src.g(l) - w.a(l)) / (Rational(2) * m + Rational(2 * l)), "b_{n,l} identity" + at);
                }
            }
            if (n >= 3) {
                c.expect(w.a(1) == (Rational(2) * m + Rational(2)) * s.energy(n) /
                                       ((Rational(2) * m + Rational(1)) * (Rational(2) * m + Rational(3))),
                         "a_{n,1} identity" + at);
            }
            if (n % 2 == 0) {
                c.expect(w.a(n / 2 + 1).is_zero() && w.b(n / 2 + 1).is_zero(), "even-n top coefficients" + at);
            }
        }
    }
    return c;
}

Check ac5() {
    Check c;
    const Rational m(1, 2);
    const auto s = swsh::build_series(m, 8);
    const auto direct = swsh::lowest_eigenvalues(swsh::assemble(m, 0.1, 32), 1);
    const auto doubled = swsh::lowest_eigenvalues(swsh::assemble(m, 0.1, 2 * direct.lmax), 1);
    c.expect(direct.truncation_error <= 1e-12, "oracle truncation");
    c.expect(std::abs(doubled.eigenvalues[0] - direct.eigenvalues[0]) <= 1e-12, "oracle self-convergence");
    c.expect(std::abs(swsh::energy_sum(s, 0.1, 8) - direct.eigenvalues[0]) <= 1e-7, "double-precision agreement");
    const auto report = swsh::compare_report(s, {0.2, 0.1, 0.05, 0.025});
    c.expect(report.rows[1].abs_diff <= 1e-7, "quad agreement at beta=0.1");
    std::vector<double> x, y;
    for (const auto& row : report.rows) {
        x.push_back(row.beta);
        y.push_back(row.abs_diff);
    }
    const double slope = loglog(x, y);
    c.expect(std::abs(slope - 9.0) <= 0.3, "log-log slope " + std::to_string(slope));
    return c;
}

Check ac6() {
    Check c;
    const auto grid = swsh::interior_grid(61);
    for (const Rational& m : {Rational(1, 2), Rational(3, 2), Rational(5, 2)}) {
        for (const double beta : {-0.5, 0.0, 0.5}) {
            const auto g = swsh::GroundState(swsh::build_series(m, 16), beta).normalized();
            double peak = 0;
            for (const double t : grid) peak = std::max(peak, std::abs(swsh::ground_psi(g, t)));
            for (const double side : {0.0, kPi}) {
                double previous = peak;
                for (const double d : {1e-3, 1e-6, 1e-9, 1e-12}) {
                    const double v = std::abs(swsh::ground_psi(g, side == 0.0 ? d : kPi - d));
                    c.expect(v < previous, "endpoint decay at m=" + m.str());
                    previous = v;
                }
                c.expect(previous <= 1e-5 * peak, "endpoint value at m=" + m.str());
            }
        }
    }
    c.expect(swsh::schrodinger_residual(swsh::GroundState(swsh::build_series(Rational(1, 2), 8), 0.0), grid) <= 1e-12,
             "beta=0 residual");
    for (const int n : {2, 4, 8}) {
        const auto s = swsh::build_series(Rational(1, 2), n);
        std::vector<double> x, y;
        for (const double beta : {0.2, 0.1, 0.05, 0.025}) {
            x.push_back(beta);
            y.push_back(swsh::schrodinger_residual(swsh::GroundState(s, beta), grid));
        }
        const double slope = loglog(x, y);
        c.expect(std::abs(slope - (n + 1)) <= 0.3, "residual slope N=" + std::to_string(n) + ": " + std::to_string(slope));
    }
    return c;
}

Check ac7() {
    Check c;
    for (const Rational& m : kGoldenM) {
        const auto s = swsh::build_series(m, 8);
        const auto step = swsh::solve_flow_step(swsh::ShapeParamSet::all_ones(), s, 8);
        for (int n = 0; n <= 8; ++n) {
            const auto diff =
                swsh::partner_potential_order(step.from_eff, n).vplus - swsh::partner_potential_order(step.to_eff, n).vminus;
            c.expect(diff.is_constant() && diff.g_part().empty(), "theta-independence n=" + std::to_string(n));
            for (const auto& p : swsh::testing::rational_points()) {
                Rational at(0);
                for (const auto& [q, v] : diff.h_part()) at += v * p.s.pow(2 * q - 2);
                for (const auto& [q, v] : diff.g_part()) at += v * p.c * p.s.pow(2 * q - 2);
                c.expect(at == step.remainder[static_cast<std::size_t>(n)], "pointwise remainder n=" + std::to_string(n));
            }
        }
        c.expect(step.remainder[0] == Rational(2) * m + Rational(2), "R_0 at m=" + m.str());
        c.expect(step.remainder[1] == Rational(1) / ((m + Rational(1)) * (m + Rational(2))), "R_1 at m=" + m.str());
    }
    c.expect(swsh::solve_flow_step(swsh::ShapeParamSet::all_ones(), swsh::build_series(Rational(1, 2), 2), 2).remainder[1] ==
                 Rational(4, 15),
             "R_1(1/2) = 4/15");
    swsh::verify::Options opt;
    const auto out = swsh::verify::run(opt);
    c.expect(has_notice(out.report, "R_{1}", Rational(-4, 5)), "verify R_{1} PAPER-DIVERGENCE notice");
    return c;
}

Check ac8() {
    Check c;
    const Rational m(1, 2);
    const auto e1 = swsh::excited_energy(m, 1, 2);
    c.expect(e1[0] == 3 && e1[1] == Rational(-1, 15), "E_1 coefficients");
    auto level1 = [&](double beta) { return swsh::lowest_eigenvalues(swsh::assemble(m, beta, 32), 2).eigenvalues[1]; };
    auto central = [&](double h) { return (level1(h) - level1(-h)) / (2 * h); };
    const double slope = (4 * central(0.5e-3) - central(1e-3)) / 3;
    c.expect(std::abs(slope + 1.0 / 15.0) <= 1e-6, "Richardson slope " + std::to_string(slope));

    const auto psi1 = swsh::excited_wavefunction(m, 1, 0.0, 2);
    const double norm = 1 / std::sqrt(swsh::integrate_square([&](double t) { return psi1(t); }));
    const auto res = swsh::lowest_eigenvalues(swsh::assemble(m, 0.0, 32), 2, 1e-12, true);
    std::vector<double> v;
    for (const auto& row : res.eigenvectors) v.push_back(row[1]);
    const double sign = swsh::oracle_psi(m, v, kPi / 2) * psi1(kPi / 2) < 0 ? -1.0 : 1.0;
    double worst = 0;
    for (int i = 1; i < 400; ++i) {
        const double t = i * kPi / 400;
        worst = std::max(worst, std::abs(sign * swsh::oracle_psi(m, v, t) - norm * psi1(t)));
    }
    c.expect(worst <= 1e-6, "ladder state vs oracle eigenvector");
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Check ac9() {
    Check c;
    const std::string cli = SWSH_CLI_BINARY;
    const std::string a = "acceptance_verify_a.json";
    const std::string b = "acceptance_verify_b.json";
    for (const auto& path : {a, b}) {
        const std::string cmd = "\"" + cli + "\" verify --m 1/2 --order 8 --out " + path + " 2>/dev/null";
        c.expect(std::system(cmd.c_str()) == 0, "verify exit status");
    }
    const std::string ra = slurp(a), rb = slurp(b);
    c.expect(!ra.empty(), "report written");
    c.expect(ra == rb, "byte-identical reports");
    std::remove(a.c_str());
    std::remove(b.c_str());
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Check()> run;
        double budget_s;  // 0: no runtime bound
    };
    const std::vector<Criterion> criteria{
        {"AC1", "golden W1-W4 and E_{0,1,3,4} coefficients", ac1, 1.0},
        {"AC2", "Riccati exactness, m = 1/2..9/2, n <= 12", ac2, 10.0},
        {"AC3", "E_{0,2} adjudication and PAPER-DIVERGENCE notice", ac3, 0.0},
        {"AC4", "identity suite and even-n top coefficients, n <= 12", ac4, 0.0},
        {"AC5", "series-oracle agreement and slope 9", ac5, 5.0},
        {"AC6", "ground wavefunction endpoints, residual and slopes", ac6, 0.0},
        {"AC7", "shape invariance, R_0 and R_1", ac7, 0.0},
        {"AC8", "first excited level against the oracle", ac8, 0.0},
        {"AC9", "byte-identical verify reports", ac9, 0.0},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.note = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.budget_s > 0 && elapsed >= cr.budget_s) c.expect(false, "runtime budget exceeded");
        if (!c.ok) ++failures;
        std::printf("%s %s  %s (%.2f s)%s%s\n", cr.id, c.ok ? "PASS" : "FAIL", cr.title, elapsed,
                    c.ok ? "" : ": ", c.note.c_str());
    }
    return failures == 0 ? 0 : 1;
}
