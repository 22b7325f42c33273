#include "swsh/oracle.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/jacobi.hpp>
#include <cmath>

#include "swsh/kernels.hpp"
#include "swsh/quad.hpp"

namespace swsh {

double basis_theta(const Rational& m, int k, double theta) {
    const double a = m.to_double() + 0.5;
    const double b = m.to_double() - 0.5;
    const double log_h = (a + b + 1) * std::log(2.0) + std::lgamma(k + a + 1) + std::lgamma(k + b + 1) -
                         std::log(2 * k + a + b + 1) - std::lgamma(k + a + b + 1) - std::lgamma(k + 1.0);
    const double half = 0.5 * theta;
    const double one_minus_x = 2 * std::sin(half) * std::sin(half);
    const double one_plus_x = 2 * std::cos(half) * std::cos(half);
    const double p = boost::math::jacobi(static_cast<unsigned>(k), a, b, std::cos(theta));
    return std::pow(one_minus_x, a / 2) * std::pow(one_plus_x, b / 2) * p * std::exp(-0.5 * log_h);
}

double oracle_psi(const Rational& m, const std::vector<double>& coefficients, double theta) {
    double acc = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (coefficients[k] != 0.0) acc += coefficients[k] * basis_theta(m, static_cast<int>(k), theta);
    }
    return std::sqrt(std::sin(theta)) * acc;
}

std::vector<double> series_fit(const Rational& m, int orders, const std::vector<double>& betas) {
    if (orders < 0) throw DomainError("series_fit: orders must be nonnegative");
    if (static_cast<int>(betas.size()) <= orders) {
        throw DomainError("series_fit: need more samples than fitted orders");
    }
    double scale = 0.0;
    for (const double b : betas) scale = std::max(scale, std::abs(b));
    if (scale == 0.0) throw DomainError("series_fit: all samples are zero");

    const auto rows = static_cast<Eigen::Index>(betas.size());
    Eigen::MatrixXd v(rows, orders + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = betas[static_cast<std::size_t>(i)] / scale;
        double pw = 1.0;
        for (int j = 0; j <= orders; ++j, pw *= t) v(i, j) = pw;
        y(i) = oracle_ground_energy<double>(m, betas[static_cast<std::size_t>(i)]);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double condition = sv(0) / sv(sv.size() - 1);
    if (!(condition <= 1e12)) {
        throw NumericError("series_fit: fit matrix condition number " + std::to_string(condition) + " exceeds 1e12");
    }
    const Eigen::VectorXd c = svd.solve(y);
    std::vector<double> out(static_cast<std::size_t>(orders + 1));
    double s = 1.0;
    for (int j = 0; j <= orders; ++j, s *= scale) out[static_cast<std::size_t>(j)] = c(j) / s;
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need at least two matching points");
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]) / n;
        my += std::log(y[i]) / n;
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        num += dx * (std::log(y[i]) - my);
        den += dx * dx;
    }
    return num / den;
}

CompareReport compare_report(const SuperpotentialSeries& series, const std::vector<double>& betas, int lmax) {
    CompareReport report;
    std::vector<double> xs, ys;
    const std::vector<quad> qbetas(betas.begin(), betas.end());
    const auto results = kernels::oracle_sweep(series.m(), qbetas, 1, quad(1e-30), lmax, kernels::Mode::parallel);
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double b = betas[i];
        const quad beta(b);
        const OracleResult<quad>& res = results[i];
        const quad oracle = res.eigenvalues[0];
        const quad sum = energy_sum(series, beta, series.order());
        const quad diff = abs(sum - oracle);
        CompareRow row{b, static_cast<double>(sum), static_cast<double>(oracle), static_cast<double>(diff),
                       static_cast<double>(res.truncation_error)};
        if (b != 0.0 && row.abs_diff > 0.0) {
            xs.push_back(std::abs(b));
            ys.push_back(row.abs_diff);
        }
        report.rows.push_back(row);
    }
    if (xs.size() >= 2) report.fitted_order = loglog_slope(xs, ys);
    return report;
}

}  // namespace swsh
