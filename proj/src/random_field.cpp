#include "musklab/random_field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace musk {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

InterfaceField make_mode_field(const PeriodicGrid& grid, std::array<int, 2> k, double eps) {
    InterfaceField f = make_constant_field(grid, 0.0);
    const double wx = kTwoPi * k[0] / grid.period;
    const double wy = kTwoPi * k[1] / grid.period;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            f.at(i, j) = eps * std::sin(wx * grid.coord(i) + wy * grid.coord(j));
    return f;
}

InterfaceField make_random_lipschitz(const PeriodicGrid& grid, std::uint64_t seed,
                                     double target_slope, int kmax) {
    if (!(target_slope > 0.0)) throw std::invalid_argument("target slope must be positive");
    if (kmax < 1 || kmax >= grid.n / 2) throw std::invalid_argument("kmax out of range");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);

    InterfaceField f = make_constant_field(grid, 0.0);
    // random cosine series with a mild spectral rolloff; real by construction
    for (int kx = -kmax; kx <= kmax; ++kx) {
        for (int ky = 0; ky <= kmax; ++ky) {
            if (ky == 0 && kx <= 0) continue;  // one representative per +/- pair
            const double kmag = std::sqrt(static_cast<double>(kx) * kx +
                                          static_cast<double>(ky) * ky);
            const double amp = gauss(rng) / (1.0 + kmag * kmag);
            const double ph = phase(rng);
            const double wx = kTwoPi * kx / grid.period;
            const double wy = kTwoPi * ky / grid.period;
            for (int i = 0; i < grid.n; ++i) {
                const double xi = grid.coord(i);
                for (int j = 0; j < grid.n; ++j)
                    f.at(i, j) += amp * std::cos(wx * xi + wy * grid.coord(j) + ph);
            }
        }
    }

    const double slope = lipschitz_norm(f);
    if (!(slope > 0.0)) throw std::runtime_error("degenerate random field");
    double scale = target_slope / slope;
    for (double& v : f.values) v *= scale;

    double lo = f.values[0], hi = f.values[0];
    for (double v : f.values) {
        lo = std::fmin(lo, v);
        hi = std::fmax(hi, v);
    }
    const double osc = hi - lo;
    if (osc > 1.0) {  // keep values representable in [0, 1]; slope shrinks too
        for (double& v : f.values) v /= osc;
        lo /= osc;
        hi /= osc;
    }
    const double shift = 0.5 * (1.0 - (hi - lo)) - lo;
    for (double& v : f.values) v += shift;
    return f;
}

CrossingProfile::GridFixture make_fixture_crossing(const PeriodicGrid& grid, const Modulus& m,
                                                   double xi, double scale) {
    CrossingProfile profile(m, xi, scale);
    return profile.sample(grid);
}

}  // namespace musk
