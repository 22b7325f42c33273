#pragma once

// JSON and CSV serializers. JSON objects use sorted keys (nlohmann::json is
// map-backed); CSV floats are written with 17 significant digits.

#include <string>
#include <vector>

#include "json.hpp"
#include "swsh/kernels.hpp"
#include "swsh/oracle.hpp"
#include "swsh/series.hpp"
#include "swsh/shape_invariance.hpp"

namespace swsh::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// "%.17g"; non-finite values become "nan" / "inf" / "-inf".
std::string format_double(double x);

/// Sorted-key JSON text with two-space indentation and a trailing newline.
std::string dump(const Json& doc);

/// Coefficient table: schema, m, s, order, energy, w, notices.
Json coefficients_json(const SuperpotentialSeries& series);
/// One row per coefficient: n, part (a|b), index, value.
std::string coefficients_csv(const SuperpotentialSeries& series);

/// PAPER-DIVERGENCE notices that apply to a coefficient table of this order.
Json series_notices(const SuperpotentialSeries& series);

/// Flow report: per step k and order n, the flowed scales C, D, the remainder R
/// and the theta-independence verdict; plus excited-energy coefficients.
Json flow_json(const SuperpotentialSeries& series, const std::vector<FlowStep>& chain);
/// level, order, coefficient for levels 0..chain.size().
std::string excited_csv(const SuperpotentialSeries& series, const std::vector<FlowStep>& chain);

std::string compare_csv(const CompareReport& report);
Json compare_json(const Rational& m, int order, const CompareReport& report);

std::string ground_csv(const std::vector<kernels::GroundSample>& samples);
Json ground_json(const GroundState& g, const std::vector<kernels::GroundSample>& samples);

/// beta, level, eigenvalue, truncation_error, lmax.
std::string oracle_csv(const std::vector<double>& betas, const std::vector<OracleResult<double>>& results);
Json oracle_json(const Rational& m, const std::vector<double>& betas, const std::vector<OracleResult<double>>& results);

/// Relative residual scale used by the wavefunction emitters: max |psi| over the samples.
double sample_scale(const std::vector<kernels::GroundSample>& samples);

}  // namespace swsh::io
