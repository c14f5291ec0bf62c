// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations: the singular-quadrature RHS, the modulus pair scan, and
// the slope-inequality sweep.
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "musklab/dynamics.hpp"
#include "musklab/kernel.hpp"
#include "musklab/lemma_oracles.hpp"
#include "musklab/random_field.hpp"

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %9.4fs   parallel %9.4fs   speedup %5.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 64;
    const int threads = argc > 2 ? std::atoi(argv[2]) : musk::resolve_threads(0);
    const int reps = 3;
    std::printf("n = %d, threads = %d, best of %d\n", n, threads, reps);

    const musk::PeriodicGrid grid = musk::PeriodicGrid::make(6.283185307179586, n);
    const musk::InterfaceField field = musk::make_random_lipschitz(grid, 7, 0.5, 4);
    musk::QuadratureSpec spec;
    spec.rings = 24;
    spec.sectors = 16;
    const musk::MuskatOperator op(grid, spec);

    musk::RhsResult r1, r2;
    report("muskat_rhs",
           time_best_of(reps, [&] { op.apply_reference(field, r1); }),
           time_best_of(reps, [&] { op.apply(field, r2, threads); }));

    const musk::Modulus m = musk::Modulus::for_budget(2.0);
    musk::DeficitResult d1, d2;
    report("modulus pair scan",
           time_best_of(reps, [&] { d1 = musk::modulus_monitor_reference(field, 0.0, m); }),
           time_best_of(reps, [&] { d2 = musk::modulus_monitor(field, 0.0, m, 0.0, threads); }));

    musk::MonotonicityReport s1, s2;
    report("monotonicity sweep (200^3)",
           time_best_of(reps, [&] { s1 = musk::verify_monotonicity_reference(2.0, 200); }),
           time_best_of(reps, [&] { s2 = musk::verify_monotonicity(2.0, 200, threads); }));

    std::printf("consistency: rhs max|diff| %.3e, deficit diff %.3e, gap diff %.3e\n",
                [&] {
                    double mx = 0.0;
                    for (std::size_t i = 0; i < r1.rate.size(); ++i)
                        mx = std::max(mx, std::fabs(r1.rate[i] - r2.rate[i]));
                    return mx;
                }(),
                std::fabs(d1.min_deficit - d2.min_deficit),
                std::fabs(s1.min_gap - s2.min_gap));
    return 0;
}
