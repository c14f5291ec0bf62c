#pragma once

#include "musklab/modulus.hpp"

namespace musk {

// Arguments of the slope inequality: alpha_lo <= alpha_hi,
// -L <= alpha_lo <= nu, -nu <= alpha_hi <= L, |beta| <= nu.
struct SlopeTriple {
    double alpha_hi = 0.0;
    double alpha_lo = 0.0;
    double beta = 0.0;
};

bool in_constraint_box(const SlopeTriple& t, double L, double slack = 0.0);

// LHS - RHS of
//   (ah+b)/(ah^2+1)^{3/2} - (al+b)/(al^2+1)^{3/2} >= (ah-al) / (3 (L^2+1)^{3/2}).
// Rejects triples outside the constraint box.
double monotonicity_gap(const SlopeTriple& t, double L);

// The gap vanishes identically on the diagonal ah == al, so the minimizer
// structure lives in the difference quotient gap/(ah-al); the sweep tracks
// both. The quotient is invariant under (ah,al,b) -> (-al,-ah,-b), which maps
// the box to itself; argmins are canonicalized through that symmetry.
struct MonotonicityReport {
    double L = 0.0;
    int resolution = 0;
    double min_gap = 0.0;
    SlopeTriple argmin_gap;
    double min_quotient = 0.0;
    SlopeTriple argmin_quotient;       // canonical representative
    double refined_min_quotient = 0.0; // after coordinate descent from the grid argmin
    SlopeTriple refined_argmin;
    long triples_checked = 0;
    double slack = 1e-12;
    bool pass = false;  // min_gap >= -slack and min_quotient >= -slack
};

MonotonicityReport verify_monotonicity(double L, int resolution, int threads = 0);
MonotonicityReport verify_monotonicity_reference(double L, int resolution);  // plain serial

SlopeTriple canonical_triple(const SlopeTriple& t);

// int_0^{1/2} [(1+2e)^{3/2} + (1-2e)^{3/2} - 2] / e^2 de; integrand -> 3 at 0.
double kiselev_integral_constant(double tol);

// The two rearrangement integrals
//   int_0^{xi/2} [w(xi+2e) + w(xi-2e) - 2 w(xi)] / e^2 de
// + int_{xi/2}^inf [w(2e+xi) - w(2e-xi) - 2 w(xi)] / e^2 de
// with w = omega(t, .). The infinite tail is closed-form once both arguments
// saturate (e >= 1/nu + xi/2). Throws on non-convergence at the requested
// tolerance (the integral genuinely diverges when xi sits on the r = 2 knot:
// the slope jump makes the near integrand ~ nu/(2e)).
struct Rearrangement {
    double near_part = 0.0;
    double far_part = 0.0;
    double value() const { return near_part + far_part; }
    double error = 0.0;
    long evals = 0;
};

Rearrangement rearrangement_rhs(const Modulus& m, double t, double xi, double tol);

struct DissipationReport {
    double xi = 0.0;
    double near_integral = 0.0;
    double far_integral = 0.0;
    double bound = 0.0;  // -min{ nu w(0) + nu^2/2, w(0)^{1/3} nu^{2/3} }
    bool holds = false;  // near + far < bound
    bool converged = false;
};

// Quadrature may fail on the r = 2 knot; that is reported (converged=false,
// holds=false) rather than thrown, so grid sweeps can tabulate it.
DissipationReport dissipation_bound(const Modulus& m, double t, double xi);

}  // namespace musk
