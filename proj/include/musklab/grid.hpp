#pragma once

#include <cstdint>
#include <vector>

namespace musk {

// Square torus [0, P)^2 sampled uniformly with n points per axis, n a power
// of two. spacing*n == period holds exactly (n is a power of two, so the
// division only shifts the exponent).
struct PeriodicGrid {
    double period = 0.0;
    int n = 0;

    static PeriodicGrid make(double period, int n);

    double spacing() const { return period / n; }
    double coord(int i) const { return period * i / n; }
    int wrap(int i) const { return i & (n - 1); }

    // shortest signed displacement on the torus
    double torus_delta(double d) const;
    double torus_dist(double x0, double y0, double x1, double y1) const;
};

struct InterfaceField {
    PeriodicGrid grid;
    std::vector<double> values;  // row-major, values[i*n + j] at (coord(i), coord(j))
    double time = 0.0;

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n + j]; }
    bool finite() const;
};

InterfaceField make_constant_field(const PeriodicGrid& grid, double value);

double sup_norm(const std::vector<double>& values);
// sqrt(dx^2 * sum f^2): the grid quadrature of the continuum L2 norm
double l2_norm(const InterfaceField& field);
double mean_value(const std::vector<double>& values);

// max over the grid of |centered-difference gradient|
double lipschitz_norm(const InterfaceField& field);

// curvature proxy: max |second differences| / dx^2, used for the inner-disk
// error budget of the singular quadrature
double hessian_bound_estimate(const InterfaceField& field);

}  // namespace musk
