// Benchmarks the OpenMP collision-integral sweep against the serial
// reference and verifies the two agree bit for bit (each node owns its
// quadrature, so thread count cannot change results).

#include <chrono>
#include <cmath>
#include <cstdio>

#include "iwt/kinetic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace iwt;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = (argc > 1) ? static_cast<std::size_t>(std::atoi(argv[1])) : 24;
    const PhysicalParams params{1e-4, 1.0, 1.0, 1.0};
    const SpectralGrid grid = make_log_grid(1.0, 100.0, n, 1.0, 100.0, n);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const PowerLawEvaluator law({1.0, -3.5, -0.5});

    std::vector<Wavevector> nodes;
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) nodes.push_back(grid.node(ik, im));

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("collision sweep over %zu nodes (grid %zux%zu), %d thread(s)\n", nodes.size(), n,
                n, threads);

    auto t0 = clock_type::now();
    const auto serial = collision_rates(law, nodes, params, quad, false);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const auto parallel = collision_rates(law, nodes, params, quad, true);
    const double t_parallel = seconds_since(t0);

    double max_diff = 0.0;
    std::size_t points = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        max_diff = std::max(max_diff, std::fabs(serial[i].rate - parallel[i].rate));
        points += serial[i].point_count;
    }
    std::printf("quadrature points: %zu total\n", points);
    std::printf("serial:   %.3f s  (%.1f knodes/s)\n", t_serial, nodes.size() / t_serial / 1e3);
    std::printf("parallel: %.3f s  (%.1f knodes/s)\n", t_parallel, nodes.size() / t_parallel / 1e3);
    std::printf("speedup:  %.2fx\n", t_serial / t_parallel);
    std::printf("max |serial - parallel| rate difference: %.3g\n", max_diff);
    return (max_diff == 0.0) ? 0 : 1;
}
