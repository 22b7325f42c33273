#pragma once

// Data-parallel kernels: oracle beta sweeps and theta-grid sampling of the
// ground state. Every kernel has a serial reference path; the OpenMP path
// writes each result into its own slot, so both produce identical output.

#include <cstddef>
#include <exception>
#include <vector>

#include "swsh/eigenfunction.hpp"
#include "swsh/oracle.hpp"

namespace swsh::kernels {

enum class Mode { serial, parallel };

/// Worker count: omp_get_max_threads(), capped by SWSH_SEED_THREADS when set
/// to a positive integer.
int thread_cap();

/// Runs body(i) for i in [0, n). Parallel mode rethrows the first exception
/// (lowest index) after the loop has finished.
template <class Body>
void for_each_index(std::size_t n, Mode mode, Body&& body) {
    if (mode == Mode::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_cap())
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Oracle results at each beta, in input order.
template <class Real>
std::vector<OracleResult<Real>> oracle_sweep(const Rational& m, const std::vector<Real>& betas, int levels,
                                             const Real& tol, int lmax, Mode mode, bool with_vectors = false) {
    std::vector<OracleResult<Real>> out(betas.size());
    for_each_index(betas.size(), mode, [&](std::size_t i) {
        out[i] = lowest_eigenvalues(assemble(m, betas[i], lmax), levels, tol, with_vectors);
    });
    return out;
}

struct GroundSample {
    double theta;
    double psi;       // Psi_0 with the state's normalization
    double theta_fn;  // Theta_0 = Psi_0 / sqrt(sin theta)
    double defect;    // Psi'' + (bracket + E) Psi, in quad precision
};

/// Ground-state samples on a grid.
std::vector<GroundSample> sample_ground(const GroundState& g, const std::vector<double>& thetas, Mode mode);

}  // namespace swsh::kernels
