#include "musklab/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "musklab/bessel_tail.hpp"

namespace musk {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

QuadratureSpec QuadratureSpec::resolved(const PeriodicGrid& grid) const {
    QuadratureSpec q = *this;
    const double dx = grid.spacing();
    if (q.rho0 <= 0.0) q.rho0 = dx / 100.0;
    if (q.outer <= 0.0) q.outer = 0.5 * grid.period;
    if (!(q.rho0 < dx))
        throw std::invalid_argument("quadrature: rho0 must be below the grid spacing");
    if (!(dx < q.outer))
        throw std::invalid_argument("quadrature: outer cutoff must exceed the grid spacing");
    if (q.outer > 0.5 * grid.period + 1e-12 * grid.period)
        throw std::invalid_argument("quadrature: outer cutoff must stay within half a period");
    if (q.rings < 4 || q.sectors < 4)
        throw std::invalid_argument("quadrature: rings and sectors must be >= 4");
    if (q.sectors % 2 != 0)
        throw std::invalid_argument("quadrature: sectors must be even (h/-h pairing)");
    return q;
}

void bicubic_weights(double u, double w[4]) {
    const double u2 = u * u, u3 = u2 * u;
    w[0] = -0.5 * u3 + u2 - 0.5 * u;
    w[1] = 1.5 * u3 - 2.5 * u2 + 1.0;
    w[2] = -1.5 * u3 + 2.0 * u2 + 0.5 * u;
    w[3] = 0.5 * u3 - 0.5 * u2;
}

PolarTable PolarTable::build(const PeriodicGrid& grid, const QuadratureSpec& raw) {
    const QuadratureSpec q = raw.resolved(grid);
    PolarTable t;
    t.rings = q.rings;
    t.sectors = q.sectors;
    t.nodes.resize(static_cast<std::size_t>(q.rings) * q.sectors);

    const double dx = grid.spacing();
    const double step = std::pow(q.outer / q.rho0, 1.0 / q.rings);
    const double dtheta = kTwoPi / q.sectors;
    for (int k = 0; k < q.rings; ++k) {
        const double r_in = q.rho0 * std::pow(step, k);
        const double r_out = r_in * step;
        const double r = std::sqrt(r_in * r_out);  // geometric midpoint
        const double wr = (r_out - r_in) * r * dtheta;
        for (int m = 0; m < q.sectors; ++m) {
            const double theta = dtheta * (m + 0.5);
            PolarNode& node = t.nodes[static_cast<std::size_t>(k) * q.sectors + m];
            node.hx = r * std::cos(theta);
            node.hy = r * std::sin(theta);
            node.radius = r;
            node.weight = wr;
            // 4x4 stencil base and weights for sampling f at x + h
            const double fx = node.hx / dx;
            const double fy = node.hy / dx;
            const double bx = std::floor(fx);
            const double by = std::floor(fy);
            node.di = static_cast<int>(bx) - 1;
            node.dj = static_cast<int>(by) - 1;
            double wx[4], wy[4];
            bicubic_weights(fx - bx, wx);
            bicubic_weights(fy - by, wy);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) node.w16[a * 4 + b] = wx[a] * wy[b];
        }
    }
    return t;
}

double bicubic_sample(const InterfaceField& field, double x1, double x2) {
    const PeriodicGrid& g = field.grid;
    const double cx = x1 / g.spacing();
    const double cy = x2 / g.spacing();
    const double bx = std::floor(cx), by = std::floor(cy);
    double wx[4], wy[4];
    bicubic_weights(cx - bx, wx);
    bicubic_weights(cy - by, wy);
    const int ix = static_cast<int>(bx) - 1;
    const int iy = static_cast<int>(by) - 1;
    double v = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            v += wx[a] * wy[b] * field.at(g.wrap(ix + a), g.wrap(iy + b));
    return v;
}

std::vector<double> far_multiplier_table(const PeriodicGrid& grid, double R) {
    const int n = grid.n;
    const int cols = n / 2 + 1;
    std::vector<double> table(static_cast<std::size_t>(n) * cols, 0.0);
    std::map<long long, double> cache;
    for (int i = 0; i < n; ++i) {
        const int ki = i <= n / 2 ? i : i - n;
        for (int j = 0; j < cols; ++j) {
            if (ki == 0 && j == 0) continue;
            const long long k2 = static_cast<long long>(ki) * ki + static_cast<long long>(j) * j;
            auto it = cache.find(k2);
            double m;
            if (it != cache.end()) {
                m = it->second;
            } else {
                const double xi = kTwoPi * std::sqrt(static_cast<double>(k2)) / grid.period;
                m = -kTwoPi * xi * symbol_tail_fraction(R * xi);
                cache.emplace(k2, m);
            }
            table[static_cast<std::size_t>(i) * cols + j] = m;
        }
    }
    return table;
}

}  // namespace musk
