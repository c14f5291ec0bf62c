#pragma once

#include <cstdint>
#include <functional>

#include "musklab/grid.hpp"
#include "musklab/lemma_oracles.hpp"
#include "musklab/modulus.hpp"

namespace musk {

// Extremal touching configuration for the saturated modulus (j = 0):
//   f(x) = (scale/2) [profile(|x - y0|) - profile(|x - x0|)],  |x0 - y0| = xi.
// At scale 1, f(x0) - f(y0) = profile(xi) exactly and
// f(x) - f(y) <= profile(|x - y|) everywhere (the j offsets of omega cancel
// in the difference, so a positive j only adds slack). scale > 1 produces a
// deliberate violation fixture for monitor fault injection.
class CrossingProfile {
public:
    CrossingProfile(const Modulus& m, double xi, double scale = 1.0);

    const Modulus& modulus() const { return m_; }
    double xi() const { return xi_; }
    double scale() const { return scale_; }

    // plane version; x0 = (+xi/2, 0), y0 = (-xi/2, 0)
    double x0x() const { return 0.5 * xi_; }
    double y0x() const { return -0.5 * xi_; }
    double value(double px, double py) const;

    // slope vector the touching geometry dictates at the pair (max-magnitude
    // one-sided profile slope at xi, along x0 - y0)
    double touching_slope() const;

    // worst of profile(|x-y|) - (f(x) - f(y)) over random sampled pairs
    double worst_pair_margin(int samples, std::uint64_t seed) const;

    struct GridFixture {
        InterfaceField field;
        int x0i = 0, x0j = 0, y0i = 0, y0j = 0;
        double xi = 0.0;  // snapped to the grid
    };
    // torus-metric sampling with x0, y0 placed on grid points
    GridFixture sample(const PeriodicGrid& grid) const;

private:
    Modulus m_;
    double xi_;
    double scale_;
};

struct ChainQuadrature {
    double rho0 = 0.0;   // 0: 1e-3 * min(xi, 1)
    double outer = 0.0;  // 0: 2 * (2/nu + xi)
    int rings = 160;
    int sectors = 64;
};

// Shared-node dual quadrature around a point pair: accumulates both the
// Eq-rate difference (with the common slope vector w in the gradient slot)
// and the |h|^{-3} kernel integral on identical nodes and weights, so the
// slopewise inequality transfers to the sums exactly.
struct PairRates {
    double rate_diff = 0.0;        // int [I_h(x0) - I_h(y0)] dh, truncated
    double kernel_integral = 0.0;  // int (d_h f(x0) - d_h f(y0))/|h|^3 dh, same nodes
    double max_slope = 0.0;
    long nodes = 0;
};

using PlaneField = std::function<double(double, double)>;

PairRates pair_rate_difference(const PlaneField& f, double x0x, double x0y, double y0x,
                               double y0y, double wx, double wy, const ChainQuadrature& q);

struct ChainReport {
    double xi = 0.0;
    double L = 0.0;
    double lhs_rate_diff = 0.0;
    double kernel_integral = 0.0;
    double factor = 0.0;  // 1/(3 (L^2+1)^{3/2})
    double rearrangement = 0.0;
    double dissipation_limit = 0.0;  // bound at the fixture's modulus (j = 0)
    double margin_rate = 0.0;        // factor*kernel - rate_diff
    double margin_rearr = 0.0;       // rearrangement - kernel
    double margin_bound = 0.0;       // dissipation_limit - rearrangement
    bool rate_le_kernel = false;
    bool kernel_le_rearr = false;
    bool rearr_lt_bound = false;
    bool all_hold = false;
    double slack_rel = 1e-3;
};

// Checks the chained inequalities on the fixture: rate difference vs the
// normalized kernel integral, the kernel integral vs the 1-D rearrangement
// value, and the rearrangement value vs the dissipation bound.
ChainReport crossing_bound_chain(const CrossingProfile& fixture, const ChainQuadrature& q = {},
                                 double slack_rel = 1e-3);

}  // namespace musk
