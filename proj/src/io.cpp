#include "swsh/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "swsh/closed_forms.hpp"

namespace swsh::io {

namespace {

Json coeff_map_json(const CoeffMap& map) {
    Json out = Json::object();
    for (const auto& [k, v] : map) out[std::to_string(k)] = v.str();
    return out;
}

Json rational_list(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

Json scales_json(const std::map<ShapeParamSet::Key, Rational>& scales, int n, int jmax, const TrigPoly& base, bool cos_part) {
    Json out = Json::object();
    for (int j = 1; j <= jmax; ++j) {
        const Rational coeff = cos_part ? base.a(j) : base.b(j);
        if (coeff.is_zero()) continue;
        const auto it = scales.find({n, j});
        out[std::to_string(j)] = (it == scales.end() ? Rational(1) : it->second).str();
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json series_notices(const SuperpotentialSeries& series) {
    Json notices = Json::array();
    if (series.order() >= 2) {
        const Rational& m = series.m();
        notices.push_back({{"class", "PAPER-DIVERGENCE"},
                           {"quantity", "E_{0,2}"},
                           {"printed_expression", "-(4m^2+10m-5)/(2m+2)^3"},
                           {"printed", closed_forms::printed_energy(2, m).str()},
                           {"computed_expression", "-(4m^2+10m+5)/(2m+2)^3"},
                           {"computed", series.energy(2).str()},
                           {"detail", "exact coefficient matching of the order-2 Riccati equation; verify compares it with "
                                      "the spectral oracle's fitted beta^2 coefficient"}});
    }
    return notices;
}

Json coefficients_json(const SuperpotentialSeries& series) {
    Json w = Json::array();
    for (int n = 1; n <= series.order(); ++n) {
        const TrigPoly& p = series.w(n);
        w.push_back({{"n", n}, {"a", coeff_map_json(p.cos_part())}, {"b", coeff_map_json(p.sin_part())}});
    }
    return {{"schema", kSchemaVersion},
            {"m", series.m().str()},
            {"s", spin_weight().str()},
            {"order", series.order()},
            {"energy", rational_list(series.energies())},
            {"w0", {{"cot", series.w0().cot_coeff.str()}, {"csc", series.w0().csc_coeff.str()}}},
            {"w", w},
            {"notices", series_notices(series)}};
}

std::string coefficients_csv(const SuperpotentialSeries& series) {
    std::ostringstream out;
    out << "n,part,index,value\n";
    for (int n = 0; n <= series.order(); ++n) out << n << ",E,0," << series.energy(n) << "\n";
    for (int n = 1; n <= series.order(); ++n) {
        for (const auto& [k, v] : series.w(n).cos_part()) out << n << ",a," << k << "," << v << "\n";
        for (const auto& [k, v] : series.w(n).sin_part()) out << n << ",b," << k << "," << v << "\n";
    }
    return out.str();
}

Json flow_json(const SuperpotentialSeries& series, const std::vector<FlowStep>& chain) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const FlowStep& step = chain[k];
        Json orders = Json::array();
        for (int n = 0; n <= step.order(); ++n) {
            const SourceSeries diff =
                partner_potential_order(step.from_eff, n).vplus - partner_potential_order(step.to_eff, n).vminus;
            const bool exact = diff.is_constant() && diff.g_part().empty() &&
                               diff.constant() == step.remainder[static_cast<std::size_t>(n)];
            Json c, d;
            if (n == 0) {
                c = {{"0", step.to.a00.str()}};
                d = {{"0", step.to.b00.str()}};
            } else {
                c = scales_json(step.to.a, n, n / 2 + 1, series.w(n), true);
                d = scales_json(step.to.b, n, (n + 1) / 2 + 1, series.w(n), false);
            }
            orders.push_back({{"n", n},
                              {"C", c},
                              {"D", d},
                              {"R", step.remainder[static_cast<std::size_t>(n)].str()},
                              {"theta_independence", exact ? "exact" : "violated"}});
        }
        steps.push_back({{"step", static_cast<int>(k) + 1}, {"orders", orders}});
    }
    Json energies = Json::array();
    for (int level = 0; level <= static_cast<int>(chain.size()); ++level) {
        energies.push_back({{"level", level}, {"coefficients", rational_list(excited_energy(series, level, series.order()))}});
    }
    return {{"schema", kSchemaVersion},
            {"m", series.m().str()},
            {"s", spin_weight().str()},
            {"order", series.order()},
            {"steps", steps},
            {"excited_energy", energies}};
}

std::string excited_csv(const SuperpotentialSeries& series, const std::vector<FlowStep>& chain) {
    std::ostringstream out;
    out << "level,order,coefficient\n";
    for (int level = 0; level <= static_cast<int>(chain.size()); ++level) {
        const auto e = excited_energy(series, level, series.order());
        for (std::size_t n = 0; n < e.size(); ++n) out << level << "," << n << "," << e[n] << "\n";
    }
    return out.str();
}

std::string compare_csv(const CompareReport& report) {
    std::ostringstream out;
    out << "beta,E_series,E_oracle,abs_diff,fitted_order\n";
    const std::string order = report.fitted_order ? format_double(*report.fitted_order) : "";
    for (const auto& row : report.rows) {
        out << format_double(row.beta) << "," << format_double(row.series) << "," << format_double(row.oracle) << ","
            << format_double(row.abs_diff) << "," << order << "\n";
    }
    return out.str();
}

Json compare_json(const Rational& m, int order, const CompareReport& report) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"beta", row.beta},
                        {"E_series", row.series},
                        {"E_oracle", row.oracle},
                        {"abs_diff", row.abs_diff},
                        {"oracle_truncation", row.oracle_truncation}});
    }
    return {{"schema", kSchemaVersion},
            {"m", m.str()},
            {"s", spin_weight().str()},
            {"order", order},
            {"rows", rows},
            {"fitted_order", report.fitted_order ? Json(*report.fitted_order) : Json(nullptr)}};
}

double sample_scale(const std::vector<kernels::GroundSample>& samples) {
    double scale = 0;
    for (const auto& s : samples) scale = std::max(scale, std::abs(s.psi));
    return scale;
}

std::string ground_csv(const std::vector<kernels::GroundSample>& samples) {
    const double scale = sample_scale(samples);
    std::ostringstream out;
    out << "theta,psi0,theta0,residual\n";
    for (const auto& s : samples) {
        out << format_double(s.theta) << "," << format_double(s.psi) << "," << format_double(s.theta_fn) << ","
            << format_double(std::abs(s.defect) / scale) << "\n";
    }
    return out.str();
}

Json ground_json(const GroundState& g, const std::vector<kernels::GroundSample>& samples) {
    const double scale = sample_scale(samples);
    Json rows = Json::array();
    for (const auto& s : samples) {
        rows.push_back({{"theta", s.theta}, {"psi0", s.psi}, {"theta0", s.theta_fn}, {"residual", std::abs(s.defect) / scale}});
    }
    return {{"schema", kSchemaVersion},
            {"m", g.m().str()},
            {"s", spin_weight().str()},
            {"order", g.order()},
            {"beta", g.beta()},
            {"normalization", g.norm()},
            {"energy", g.energy(g.beta())},
            {"rows", rows}};
}

std::string oracle_csv(const std::vector<double>& betas, const std::vector<OracleResult<double>>& results) {
    std::ostringstream out;
    out << "beta,level,eigenvalue,truncation_error,lmax\n";
    for (std::size_t i = 0; i < betas.size(); ++i) {
        for (std::size_t l = 0; l < results[i].eigenvalues.size(); ++l) {
            out << format_double(betas[i]) << "," << l << "," << format_double(results[i].eigenvalues[l]) << ","
                << format_double(results[i].truncation_error) << "," << results[i].lmax << "\n";
        }
    }
    return out.str();
}

Json oracle_json(const Rational& m, const std::vector<double>& betas, const std::vector<OracleResult<double>>& results) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < betas.size(); ++i) {
        rows.push_back({{"beta", betas[i]},
                        {"eigenvalues", results[i].eigenvalues},
                        {"truncation_error", results[i].truncation_error},
                        {"lmax", results[i].lmax}});
    }
    return {{"schema", kSchemaVersion}, {"m", m.str()}, {"s", spin_weight().str()}, {"rows", rows}};
}

}  // namespace swsh::io
