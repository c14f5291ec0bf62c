#include "musklab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace musk {

PeriodicGrid PeriodicGrid::make(double period, int n) {
    if (!(period > 0.0)) throw std::invalid_argument("grid period must be positive");
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid resolution must be a power of two >= 8");
    return PeriodicGrid{period, n};
}

double PeriodicGrid::torus_delta(double d) const {
    d = std::fmod(d, period);
    if (d > 0.5 * period) d -= period;
    if (d < -0.5 * period) d += period;
    return d;
}

double PeriodicGrid::torus_dist(double x0, double y0, double x1, double y1) const {
    const double dx = torus_delta(x0 - x1);
    const double dy = torus_delta(y0 - y1);
    return std::sqrt(dx * dx + dy * dy);
}

bool InterfaceField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

InterfaceField make_constant_field(const PeriodicGrid& grid, double value) {
    InterfaceField f;
    f.grid = grid;
    f.values.assign(static_cast<std::size_t>(grid.n) * grid.n, value);
    return f;
}

double sup_norm(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) m = std::fmax(m, std::fabs(v));
    return m;
}

double l2_norm(const InterfaceField& field) {
    const double dx = field.grid.spacing();
    double s = 0.0;
    for (double v : field.values) s += v * v;
    return std::sqrt(s) * dx;
}

double mean_value(const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / values.size();
}

double lipschitz_norm(const InterfaceField& field) {
    const int n = field.grid.n;
    const double inv2dx = 1.0 / (2.0 * field.grid.spacing());
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ip = field.grid.wrap(i + 1), im = field.grid.wrap(i - 1);
        for (int j = 0; j < n; ++j) {
            const int jp = field.grid.wrap(j + 1), jm = field.grid.wrap(j - 1);
            const double gx = (field.at(ip, j) - field.at(im, j)) * inv2dx;
            const double gy = (field.at(i, jp) - field.at(i, jm)) * inv2dx;
            m = std::fmax(m, std::sqrt(gx * gx + gy * gy));
        }
    }
    return m;
}

double hessian_bound_estimate(const InterfaceField& field) {
    const int n = field.grid.n;
    const double invdx2 = 1.0 / (field.grid.spacing() * field.grid.spacing());
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ip = field.grid.wrap(i + 1), im = field.grid.wrap(i - 1);
        for (int j = 0; j < n; ++j) {
            const int jp = field.grid.wrap(j + 1), jm = field.grid.wrap(j - 1);
            const double c = field.at(i, j);
            const double fxx = field.at(ip, j) + field.at(im, j) - 2.0 * c;
            const double fyy = field.at(i, jp) + field.at(i, jm) - 2.0 * c;
            const double fxy = 0.25 * (field.at(ip, jp) - field.at(ip, jm) -
                                       field.at(im, jp) + field.at(im, jm));
            m = std::fmax(m, (std::fabs(fxx) + 2.0 * std::fabs(fxy) + std::fabs(fyy)) * invdx2);
        }
    }
    return m;
}

}  // namespace musk
