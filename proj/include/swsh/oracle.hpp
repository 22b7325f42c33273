#pragma once

// Non-perturbative eigenvalues of the s = 1/2 angular operator in the
// spin-weighted spherical-harmonic basis l = m, m+1, ...:
//
//   M = diag(l(l+1) - 3/4) + 2 s beta C - beta^2 C^2,
//
// with C the tridiagonal matrix of cos(theta). Templated on the scalar so the
// same code runs in double and in quad precision.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "swsh/errors.hpp"
#include "swsh/rational.hpp"
#include "swsh/series.hpp"

namespace swsh {

template <class Real>
using DenseMatrix = std::vector<std::vector<Real>>;

/// <l|cos|l> = -m s / (l (l+1)).
template <class Real>
Real cos_coupling_diag(const Real& m, const Real& l) {
    return -m / (Real(2) * l * (l + Real(1)));
}

/// <l+1|cos|l> = sqrt(((l+1)^2 - m^2)((l+1)^2 - s^2)) / ((l+1) sqrt((2l+1)(2l+3))).
template <class Real>
Real cos_coupling_off(const Real& m, const Real& l) {
    using std::sqrt;
    const Real l1 = l + Real(1);
    const Real num = (l1 * l1 - m * m) * (l1 * l1 - Real(1) / Real(4));
    return sqrt(num) / (l1 * sqrt((Real(2) * l + Real(1)) * (Real(2) * l + Real(3))));
}

template <class Real>
struct SpectralProblem {
    Rational m;
    Real beta;
    int lmax = 0;
    DenseMatrix<Real> matrix;
};

template <class Real>
SpectralProblem<Real> assemble(const Rational& m, const Real& beta, int lmax) {
    validate_m(m);
    if (lmax < 4) throw DomainError("assemble: lmax must be >= 4, got " + std::to_string(lmax));
    const Real mr = m.to<Real>();
    const int n = lmax + 1;  // one extra level so C^2 is exact on the kept block
    std::vector<Real> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Real l = mr + Real(i);
        diag[static_cast<std::size_t>(i)] = cos_coupling_diag(mr, l);
        off[static_cast<std::size_t>(i)] = cos_coupling_off(mr, l);  // couples i and i+1
    }
    SpectralProblem<Real> p{m, beta, lmax, DenseMatrix<Real>(static_cast<std::size_t>(lmax),
                                                              std::vector<Real>(static_cast<std::size_t>(lmax), Real(0)))};
    auto c = [&](int i, int j) -> Real {
        if (i < 0 || j < 0 || i >= n || j >= n) return Real(0);
        if (i == j) return diag[static_cast<std::size_t>(i)];
        if (j == i + 1) return off[static_cast<std::size_t>(i)];
        if (i == j + 1) return off[static_cast<std::size_t>(j)];
        return Real(0);
    };
    for (int i = 0; i < lmax; ++i) {
        const Real l = mr + Real(i);
        for (int j = std::max(0, i - 2); j <= std::min(lmax - 1, i + 2); ++j) {
            Real c2 = Real(0);
            for (int k = std::max(0, i - 1); k <= std::min(n - 1, i + 1); ++k) c2 += c(i, k) * c(k, j);
            Real v = beta * c(i, j) - beta * beta * c2;
            if (i == j) v += l * (l + Real(1)) - Real(3) / Real(4);
            p.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        }
    }
    return p;
}

/// Cyclic Jacobi rotations. Returns eigenvalues ascending; columns of `vectors`
/// (when requested) follow the same order.
template <class Real>
std::vector<Real> jacobi_eigensolve(DenseMatrix<Real> a, DenseMatrix<Real>* vectors) {
    using std::abs;
    using std::sqrt;
    const std::size_t n = a.size();
    DenseMatrix<Real> v(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = Real(1);
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real previous_off = Real(-1);
    for (int sweep = 0;; ++sweep) {
        Real off = Real(0), total = Real(0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                total += a[i][j] * a[i][j];
                if (i != j) off += a[i][j] * a[i][j];
            }
        }
        // Converged, or stalled at the rounding floor.
        if (off == Real(0) || off <= eps * eps * total * Real(1e-4)) break;
        if (previous_off >= Real(0) && off >= previous_off && off <= eps * total) break;
        if (sweep == 100) throw NumericError("jacobi_eigensolve: no convergence after 100 sweeps");
        previous_off = off;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == Real(0)) continue;
                const Real g = Real(100) * abs(a[p][q]);
                if (sweep > 3 && abs(a[p][p]) + g == abs(a[p][p]) && abs(a[q][q]) + g == abs(a[q][q])) {
                    a[p][q] = a[q][p] = Real(0);
                    continue;
                }
                const Real theta = (a[q][q] - a[p][p]) / (Real(2) * a[p][q]);
                const Real t = (theta >= Real(0) ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + Real(1)));
                const Real c = Real(1) / sqrt(t * t + Real(1));
                const Real s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const Real akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Real apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Real vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&a](std::size_t i, std::size_t j) { return a[i][i] < a[j][j]; });
    std::vector<Real> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a[idx[i]][idx[i]];
    if (vectors) {
        vectors->assign(n, std::vector<Real>(n, Real(0)));
        for (std::size_t col = 0; col < n; ++col) {
            // Sign convention: largest-magnitude component positive.
            std::size_t arg = 0;
            for (std::size_t k = 1; k < n; ++k) {
                if (abs(v[k][idx[col]]) > abs(v[arg][idx[col]])) arg = k;
            }
            const Real sign = v[arg][idx[col]] < Real(0) ? Real(-1) : Real(1);
            for (std::size_t k = 0; k < n; ++k) (*vectors)[k][col] = sign * v[k][idx[col]];
        }
    }
    return values;
}

template <class Real>
struct OracleResult {
    std::vector<Real> eigenvalues;
    DenseMatrix<Real> eigenvectors;  // rows: basis index, columns: level; empty unless requested
    Real truncation_error = Real(0);
    int lmax = 0;
};

/// k lowest eigenvalues, with lmax doubled until every one of them moves by <= tol.
template <class Real>
OracleResult<Real> lowest_eigenvalues(const SpectralProblem<Real>& problem, int k, const Real& tol = Real(1e-12),
                                      bool with_vectors = false, int max_lmax = 1024) {
    using std::abs;
    if (k < 1 || 2 * k > problem.lmax) {
        throw DomainError("lowest_eigenvalues: need 1 <= k <= lmax/2 (k=" + std::to_string(k) +
                          ", lmax=" + std::to_string(problem.lmax) + ")");
    }
    SpectralProblem<Real> current = problem;
    DenseMatrix<Real> vecs;
    std::vector<Real> vals = jacobi_eigensolve(current.matrix, with_vectors ? &vecs : nullptr);
    for (;;) {
        const int next = 2 * current.lmax;
        if (next > max_lmax) {
            throw NumericError("lowest_eigenvalues: no self-convergence up to lmax " + std::to_string(max_lmax));
        }
        SpectralProblem<Real> bigger = assemble(problem.m, problem.beta, next);
        DenseMatrix<Real> bigger_vecs;
        std::vector<Real> bigger_vals = jacobi_eigensolve(bigger.matrix, with_vectors ? &bigger_vecs : nullptr);
        Real change = Real(0);
        for (int i = 0; i < k; ++i) {
            change = std::max<Real>(change, abs(bigger_vals[static_cast<std::size_t>(i)] - vals[static_cast<std::size_t>(i)]));
        }
        if (change <= tol) {
            OracleResult<Real> out;
            out.eigenvalues.assign(vals.begin(), vals.begin() + k);
            out.truncation_error = change;
            out.lmax = current.lmax;
            if (with_vectors) {
                out.eigenvectors.assign(static_cast<std::size_t>(current.lmax), std::vector<Real>(static_cast<std::size_t>(k)));
                for (int r = 0; r < current.lmax; ++r) {
                    for (int c = 0; c < k; ++c) {
                        out.eigenvectors[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                            vecs[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                    }
                }
            }
            return out;
        }
        current = std::move(bigger);
        vals = std::move(bigger_vals);
        vecs = std::move(bigger_vecs);
    }
}

/// Default truncation for `levels` requested eigenvalues.
inline int default_lmax(int levels) { return std::max(32, 4 * levels); }

/// Lowest eigenvalue at (m, beta) with the default truncation.
template <class Real>
Real oracle_ground_energy(const Rational& m, const Real& beta, const Real& tol = Real(1e-12), int lmax = 0) {
    return lowest_eigenvalues(assemble(m, beta, lmax > 0 ? lmax : default_lmax(1)), 1, tol).eigenvalues[0];
}

/// Basis function Theta_k(theta) = (1-x)^{a/2} (1+x)^{b/2} P_k^{(a,b)}(x) / sqrt(h_k), a = m + 1/2, b = m - 1/2.
double basis_theta(const Rational& m, int k, double theta);

/// Psi(theta) = sqrt(sin theta) sum_k v_k Theta_k(theta) for an eigenvector column.
double oracle_psi(const Rational& m, const std::vector<double>& coefficients, double theta);

/// Least-squares polynomial fit of the oracle ground energy; coefficients for orders 0..orders.
/// Throws NumericError when the scaled fit matrix has condition number > 1e12.
std::vector<double> series_fit(const Rational& m, int orders, const std::vector<double>& betas);

struct CompareRow {
    double beta;
    double series;
    double oracle;
    double abs_diff;
    double oracle_truncation;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    std::optional<double> fitted_order;  // log-log slope of abs_diff over rows with beta != 0 and diff != 0
};

/// Series sum (orders 0..N) against the oracle, evaluated in quad precision so
/// differences down to ~1e-25 are resolved. `lmax` is the starting truncation.
CompareReport compare_report(const SuperpotentialSeries& series, const std::vector<double>& betas, int lmax = 12);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace swsh
