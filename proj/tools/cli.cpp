#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swsh/io.hpp"
#include "swsh/kernels.hpp"

namespace swsh::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string m = "1/2";
    int order = 8;
    std::optional<std::string> beta;
    std::optional<int> level;
    std::optional<int> lmax;
    std::string out;
    std::optional<std::string> format;
    std::ostream* stdout_stream = nullptr;
    std::ostream* stderr_stream = nullptr;
};

/// "x" or "start:stop:count".
std::vector<double> parse_beta(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw DomainError("--beta: cannot parse '" + s + "'");
        }
        if (used != s.size() || !std::isfinite(v)) throw DomainError("--beta: cannot parse '" + s + "'");
        return v;
    };
    const auto first = text.find(':');
    if (first == std::string::npos) return {number(text)};
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
        throw DomainError("--beta: expected a number or start:stop:count, got '" + text + "'");
    }
    const double start = number(text.substr(0, first));
    const double stop = number(text.substr(first + 1, second - first - 1));
    const std::string count_text = text.substr(second + 1);
    std::size_t used = 0;
    long count = 0;
    try {
        count = std::stol(count_text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != count_text.size() || count < 1) {
        throw DomainError("--beta: sweep count must be an integer >= 1, got '" + count_text + "'");
    }
    std::vector<double> out;
    for (long i = 0; i < count; ++i) {
        out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

double scalar_beta(const RunConfig& cfg, double fallback) {
    if (!cfg.beta) return fallback;
    const auto v = parse_beta(*cfg.beta);
    if (v.size() != 1) throw DomainError("--beta: " + cfg.command + " takes a single value");
    return v.front();
}

std::string format_of(const RunConfig& cfg, const std::string& fallback) { return cfg.format.value_or(fallback); }

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        *cfg.stdout_stream << text;
        cfg.stdout_stream->flush();
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + cfg.out + "'");
    file << text;
    if (!file) throw DomainError("failed writing '" + cfg.out + "'");
}

int run_coeffs(const RunConfig& cfg, const Rational& m) {
    const auto series = build_series(m, cfg.order);
    if (format_of(cfg, "json") == "csv") {
        emit(cfg, io::coefficients_csv(series));
    } else {
        emit(cfg, io::dump(io::coefficients_json(series)));
    }
    return kOk;
}

int run_eigen(const RunConfig& cfg, const Rational& m) {
    const auto betas = parse_beta(cfg.beta.value_or("0:0.2:5"));
    const auto series = build_series(m, cfg.order);
    const auto report = compare_report(series, betas, cfg.lmax.value_or(12));
    if (format_of(cfg, "csv") == "csv") {
        emit(cfg, io::compare_csv(report));
    } else {
        emit(cfg, io::dump(io::compare_json(m, cfg.order, report)));
    }
    return kOk;
}

int run_wavefunc(const RunConfig& cfg, const Rational& m) {
    const double beta = scalar_beta(cfg, 0.1);
    const auto g = GroundState(build_series(m, cfg.order), beta).normalized();
    const auto samples = kernels::sample_ground(g, interior_grid(181), kernels::Mode::parallel);
    if (format_of(cfg, "csv") == "csv") {
        emit(cfg, io::ground_csv(samples));
    } else {
        emit(cfg, io::dump(io::ground_json(g, samples)));
    }
    return kOk;
}

int run_excited(const RunConfig& cfg, const Rational& m) {
    const int level = cfg.level.value_or(1);
    if (level < 1) throw DomainError("--level: excited needs a level >= 1");
    const auto series = build_series(m, cfg.order);
    const auto chain = flow_chain(series, level, cfg.order);
    for (const auto& step : chain) verify_invariance(step, interior_grid(25));
    if (format_of(cfg, "json") == "csv") {
        emit(cfg, io::excited_csv(series, chain));
    } else {
        emit(cfg, io::dump(io::flow_json(series, chain)));
    }
    return kOk;
}

int run_verify(const RunConfig& cfg, const Rational& m) {
    if (format_of(cfg, "json") != "json") throw DomainError("--format: verify writes json only");
    verify::Options opt;
    opt.m = m;
    opt.order = cfg.order;
    if (cfg.beta) opt.betas = parse_beta(*cfg.beta);
    if (cfg.level) opt.flow_steps = *cfg.level;
    const auto outcome = verify::run(opt);
    emit(cfg, io::dump(outcome.report));
    *cfg.stderr_stream << "verify: " << outcome.passes << " pass, " << outcome.exact_failures << " exact-fail, "
                       << outcome.oracle_failures << " oracle-fail, " << outcome.divergences << " paper-divergence\n";
    return exit_code_for(outcome);
}

int run_oracle(const RunConfig& cfg, const Rational& m) {
    const auto betas = parse_beta(cfg.beta.value_or("0.1"));
    const int levels = cfg.level.value_or(0) + 1;
    if (levels < 1) throw DomainError("--level must be >= 0");
    const int lmax = cfg.lmax.value_or(default_lmax(levels));
    const auto results = kernels::oracle_sweep(m, betas, levels, 1e-12, lmax, kernels::Mode::parallel);
    if (format_of(cfg, "csv") == "csv") {
        emit(cfg, io::oracle_csv(betas, results));
    } else {
        emit(cfg, io::dump(io::oracle_json(m, betas, results)));
    }
    return kOk;
}

int dispatch(const RunConfig& cfg) {
    const Rational m = Rational::parse(cfg.m);
    validate_m(m);
    if (cfg.order < 0) throw DomainError("--order must be >= 0");
    if (cfg.lmax && *cfg.lmax < 4) throw DomainError("--lmax must be >= 4");
    if (cfg.command == "coeffs") return run_coeffs(cfg, m);
    if (cfg.command == "eigen") return run_eigen(cfg, m);
    if (cfg.command == "wavefunc") return run_wavefunc(cfg, m);
    if (cfg.command == "excited") return run_excited(cfg, m);
    if (cfg.command == "verify") return run_verify(cfg, m);
    return run_oracle(cfg, m);
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const VerificationError*>(&e) || dynamic_cast<const SingularFlowError*>(&e) ||
        dynamic_cast<const NumericError*>(&e)) {
        return kVerificationFailure;
    }
    return kConfigError;
}

int exit_code_for(const verify::Outcome& outcome) { return outcome.failed() ? kVerificationFailure : kOk; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perturbative SUSY-QM solver for the s = 1/2 spin-weighted spheroidal equation"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    cfg.stdout_stream = &out;
    cfg.stderr_stream = &err;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"coeffs", "exact superpotential and energy coefficients (JSON)"},
        {"eigen", "series energy against the spectral oracle (CSV)"},
        {"wavefunc", "normalized ground state and residual on a theta grid (CSV)"},
        {"excited", "shape-invariance flow and excited energies (JSON; CSV with --format csv)"},
        {"verify", "full invariant suite (JSON report; exit 2 on failure)"},
        {"oracle", "raw oracle eigenvalues (CSV)"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--m", cfg.m, "azimuthal index, \"p/q\" or integer")->capture_default_str();
        sub->add_option("--order", cfg.order, "truncation order N")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "beta value or start:stop:count sweep");
        sub->add_option("--level", cfg.level, "excited level / number of flow steps / highest oracle level");
        sub->add_option("--lmax", cfg.lmax, "initial oracle truncation");
        sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        return dispatch(cfg);
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        err << (code == kVerificationFailure ? "verification failure: " : "error: ") << e.what() << "\n";
        return code;
    }
}

}  // namespace cli
