#pragma once

#include <array>
#include <memory>
#include <vector>

#include "musklab/fft2d.hpp"
#include "musklab/grid.hpp"
#include "musklab/quadrature.hpp"
#include "musklab/threads.hpp"

namespace musk {

struct RhsResult {
    std::vector<double> rate;
    double error_budget = 0.0;     // inner disk + far-field linearization remainder
    double max_slope_seen = 0.0;   // max |delta_h f| / |h| over quadrature nodes
    long slope_cap_violations = 0; // nodes exceeding spec.slope_cap (if set)
};

// Evaluator for the nonlocal interface velocity
//   I[f](x) = int_{R^2} (delta_h f - grad f . h) / (delta_h f^2 + |h|^2)^{3/2} dh
// on the torus: symmetrized polar quadrature of the full integrand on
// rho0 <= |h| <= R, exact linearized spectral completion on |h| > R.
// The per-point work is embarrassingly parallel; each point's accumulation
// runs in a fixed order, so results are identical for any thread count.
class MuskatOperator {
public:
    MuskatOperator(const PeriodicGrid& grid, const QuadratureSpec& spec);

    const PeriodicGrid& grid() const { return grid_; }
    const QuadratureSpec& spec() const { return spec_; }
    const PolarTable& table() const { return table_; }

    void apply(const InterfaceField& field, RhsResult& out, int threads = 0) const;

    // plain serial rewrite (weights recomputed inline); kept for testing
    void apply_reference(const InterfaceField& field, RhsResult& out) const;

    const Fft2D& fft() const { return fft_; }

private:
    void prepare(const InterfaceField& field, std::vector<double>& gx, std::vector<double>& gy,
                 std::vector<double>& far, RhsResult& out) const;

    PeriodicGrid grid_;
    QuadratureSpec spec_;
    PolarTable table_;
    Fft2D fft_;
    std::vector<double> far_mult_;
};

RhsResult muskat_rhs(const InterfaceField& field, const QuadratureSpec& spec, int threads = 0);
RhsResult muskat_rhs_reference(const InterfaceField& field, const QuadratureSpec& spec);

// -(-Laplacian)^{1/2} f via the Fourier multiplier -|xi| (the linearized
// equation; used as a shape oracle for the dispersion of the full kernel)
std::vector<double> halflap_rhs(const InterfaceField& field);

struct SymbolMeasurement {
    std::array<int, 2> k{};
    double xi_mag = 0.0;    // |2 pi k / P|
    double rate = 0.0;      // measured decay rate of the mode
    double constant = 0.0;  // rate / |xi|; the kernel normalization c
    double residual = 0.0;  // off-mode fraction of the response
};

// Applies the full operator to eps*sin(2 pi k.x/P) and projects the response
// back onto the mode. Rejects eps > 1e-3 (linear regime) and k = 0.
SymbolMeasurement measure_symbol(const PeriodicGrid& grid, std::array<int, 2> k, double eps,
                                 const QuadratureSpec& spec, int threads = 0);

}  // namespace musk
