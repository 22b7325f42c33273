#include "swsh/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <string>

namespace swsh::kernels {

int thread_cap() {
    int threads = omp_get_max_threads();
    if (const char* env = std::getenv("SWSH_SEED_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0 && cap < threads) threads = static_cast<int>(cap);
    }
    return threads;
}

std::vector<GroundSample> sample_ground(const GroundState& g, const std::vector<double>& thetas, Mode mode) {
    const Evaluable<quad> psi = g.evaluable_quad();
    const quad m = g.m().to<quad>();
    const quad beta(g.beta());
    const quad energy = g.energy(beta);
    std::vector<GroundSample> out(thetas.size());
    for_each_index(thetas.size(), mode, [&](std::size_t i) {
        const double t = thetas[i];
        if (!(t > 0.0 && t < 3.14159265358979323846)) {
            throw DomainError("sample_ground: theta " + std::to_string(t) + " outside (0, pi)");
        }
        const double value = ground_psi(g, t);
        out[i] = GroundSample{t, value, value / std::sqrt(std::sin(t)),
                              static_cast<double>(schrodinger_defect(psi, m, beta, energy, quad(t)))};
    });
    return out;
}

}  // namespace swsh::kernels
