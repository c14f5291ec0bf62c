#pragma once

#include <vector>

#include "musklab/grid.hpp"

namespace musk {

enum class Interpolation { bicubic, trigonometric };

// Discretization of the singular integral: symmetrized polar quadrature on
// rho0 <= |h| <= outer (geometric rings, midpoint sectors), spectral
// completion beyond, inner disk skipped and budgeted.
struct QuadratureSpec {
    double rho0 = 0.0;   // inner cutoff; 0 means dx/100
    double outer = 0.0;  // outer cutoff R; 0 means P/2
    int rings = 24;
    int sectors = 16;  // must be even: nodes pair off as h, -h
    Interpolation interpolation = Interpolation::bicubic;
    double slope_cap = 0.0;  // >0: count nodes with |delta_h f| > cap*|h|

    QuadratureSpec resolved(const PeriodicGrid& grid) const;  // defaults + validation
};

struct PolarNode {
    double hx = 0.0, hy = 0.0;  // offset components (x1, x2)
    double radius = 0.0;
    double weight = 0.0;  // r * dr * dtheta
    int di = 0, dj = 0;   // base grid offset of the 4x4 bicubic stencil
    double w16[16] = {};  // tap weights, row-major over the stencil
};

// Node table shared by every evaluation point (offsets are grid-relative, so
// the fractional parts and tap weights are point-independent).
struct PolarTable {
    int rings = 0;
    int sectors = 0;
    std::vector<PolarNode> nodes;  // ring-major, sector-minor

    static PolarTable build(const PeriodicGrid& grid, const QuadratureSpec& spec);
    const PolarNode& node(int ring, int sector) const {
        return nodes[static_cast<std::size_t>(ring) * sectors + sector];
    }
};

// Keys cubic-convolution weights (a = -1/2) for fractional offset u in [0,1);
// taps at -1, 0, 1, 2 relative to the base sample.
void bicubic_weights(double u, double w[4]);

// bicubic evaluation of a field at physical coordinates (periodic wrap)
double bicubic_sample(const InterfaceField& field, double x1, double x2);

// Spectral multiplier completing the kernel integral over |h| > R with the
// linearized (slope-free) integrand: m(xi) = -2*pi*|xi|*T(R|xi|), laid out
// like the r2c spectrum of the grid.
std::vector<double> far_multiplier_table(const PeriodicGrid& grid, double R);

}  // namespace musk
