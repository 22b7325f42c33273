#pragma once

// Full invariant suite for one (m, N): Riccati exactness, cross-check
// identities, printed closed forms, shape invariance and oracle agreement.
// Every entry is classed PASS, EXACT-FAIL, ORACLE-FAIL or PAPER-DIVERGENCE.

#include <vector>

#include "swsh/io.hpp"

namespace swsh::verify {

inline constexpr const char* kPass = "PASS";
inline constexpr const char* kExactFail = "EXACT-FAIL";
inline constexpr const char* kOracleFail = "ORACLE-FAIL";
inline constexpr const char* kPaperDivergence = "PAPER-DIVERGENCE";

struct Options {
    Rational m{1, 2};
    int order = 8;
    std::vector<double> betas{0.2, 0.1, 0.05, 0.025};
    int flow_steps = 2;
    double excited_beta = 0.1;
};

struct Outcome {
    io::Json report;
    int passes = 0;
    int exact_failures = 0;
    int oracle_failures = 0;
    int divergences = 0;

    bool failed() const noexcept { return exact_failures + oracle_failures > 0; }
};

/// Deterministic: identical options give an identical report.
Outcome run(const Options& options);

/// Tolerance for |series sum through N - exact| at beta: twice the next four
/// terms of the series plus an absolute floor.
double tail_bound(const std::vector<Rational>& coefficients, int order, double beta, double floor);

}  // namespace swsh::verify
