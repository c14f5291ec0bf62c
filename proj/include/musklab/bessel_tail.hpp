#pragma once

namespace musk {

// B(x) = int_x^inf J0(u)/u^2 du, x > 0. Panel quadrature between the
// oscillation nodes plus a two-term stationary-phase closure for the far tail.
double bessel_j0_tail(double x);

// T(x) = int_x^inf (1 - J0(u))/u^2 du = 1/x - B(x); the fraction of the
// half-Laplacian symbol carried by |h| > R at R|xi| = x.
double symbol_tail_fraction(double x);

// 2*pi * int_0^inf (1 - J0(u))/u^2 du, evaluated by radial quadrature: the
// constant c in the flat-interface linearization rate c*|xi|. Analytically 2*pi.
double kernel_symbol_constant(double tol);

}  // namespace musk
