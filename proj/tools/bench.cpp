// Timing comparison of the serial reference kernels against the OpenMP ones,
// plus one solver run and one small surface sweep at both worker counts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "gsbq/dsurface.hpp"
#include "gsbq/grid.hpp"
#include "gsbq/kernels.hpp"
#include "gsbq/parallel.hpp"
#include "gsbq/petviashvili.hpp"

using namespace gsbq;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        body();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void bench_kernels() {
    std::printf("map kernels, best of 5, seconds\n");
    std::printf("%10s %12s %12s %8s\n", "n", "serial", "openmp", "ratio");
    for (std::size_t n : {1u << 14, 1u << 16, 1u << 18, 1u << 20}) {
        std::vector<double> x(n, 1.25), y(n, 0.5);
        std::vector<std::complex<double>> z(n, {1.0, -0.5});
        std::vector<double> w(n, 1.000001);

        auto run = [&] {
            kern::axpy(1e-6, x, y);
            kern::scale(std::span<double>(x), 1.0000001);
            kern::mul_real(z, w);
        };
        par::set_backend(par::Backend::Serial);
        const double ts = time_best_of(5, run);
        par::set_backend(par::Backend::OpenMP);
        const double tp = time_best_of(5, run);
        std::printf("%10zu %12.3e %12.3e %8.2f\n", n, ts, tp, ts / tp);
    }
}

void bench_solver() {
    std::printf("\nground state solve, beta=-3 c=0 p=2, L=200 n=4096\n");
    GridPtr grid = make_grid(200.0, 4096);
    for (const char* name : {"serial", "openmp"}) {
        par::set_backend(name[0] == 's' ? par::Backend::Serial : par::Backend::OpenMP);
        const auto t0 = clock_type::now();
        SolitaryWave w = petviashvili_solve({-3.0, 0.0, 2.0, Parity::Odd}, grid,
                                            gaussian_init(grid));
        std::printf("  %-7s %8.3f s  (%d iterations)\n", name, seconds_since(t0),
                    w.diagnostics.iterations);
    }
}

void bench_sweep() {
    std::printf("\nsurface sweep, 6 points on the c = 0 segment, workers 1 vs %d\n",
                par::openmp_compiled() ? 4 : 1);
    SweepSpec spec;
    spec.segment = Segment::S1;
    spec.samples = 6;
    spec.with_dcc = false;
    spec.opt.half_length = 120.0;
    spec.opt.n_points = 2048;
    par::set_backend(par::Backend::OpenMP);
    for (int workers : {1, 4}) {
        par::set_workers(workers);
        const auto t0 = clock_type::now();
        auto rows = sweep_segment(spec);
        int ok = 0;
        for (const auto& r : rows)
            if (r.error.empty()) ++ok;
        std::printf("  workers=%d %8.3f s  (%d/%zu points)\n", workers, seconds_since(t0), ok,
                    rows.size());
    }
    par::set_workers(1);
}

}  // namespace

int main() {
    std::printf("openmp compiled in: %s\n\n", par::openmp_compiled() ? "yes" : "no");
    bench_kernels();
    bench_solver();
    bench_sweep();
    return 0;
}
