#include "musklab/bessel_tail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "musklab/adaptive.hpp"

namespace musk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// branch joint of fast_j0; quadrature panels never straddle it
constexpr double kJ0Joint = 12.0;

// J0 tuned for the quadrature hot path: power series below the joint, Hankel
// asymptotics above. Checked against std::cyl_bessel_j in the tests.
double fast_j0(double u) {
    u = std::fabs(u);
    if (u <= kJ0Joint) {
        const long double q = (long double)u * u / 4.0L;
        long double term = 1.0L, sum = 1.0L;
        for (int k = 1; k < 64; ++k) {
            term *= -q / ((long double)k * k);
            sum += term;
            if (std::fabs((double)term) < 1e-19) break;
        }
        return (double)sum;
    }
    const double u2 = u * u;
    // Hankel symbols (0,k)/(8u)^k up to k = 6 resp. 5
    const double p0 = 1.0 - 9.0 / (128.0 * u2) + 3675.0 / (32768.0 * u2 * u2) -
                      108056025.0 / (188743680.0 * u2 * u2 * u2);
    const double q0 = -1.0 / (8.0 * u) + 75.0 / (1024.0 * u2 * u) -
                      893025.0 / (3932160.0 * u2 * u2 * u);
    const double chi = u - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * u)) * (p0 * std::cos(chi) - q0 * std::sin(chi));
}

// (1 - J0(u))/u^2 without the small-u cancellation: equals
// (1/4) sum_{k>=1} (-1)^{k+1} q^{k-1}/(k!)^2 with q = u^2/4
double one_minus_j0_over_u2(double u) {
    if (u > 2.0) return (1.0 - fast_j0(u)) / (u * u);
    const long double q = (long double)u * u / 4.0L;
    long double term = 1.0L, sum = 0.0L;
    for (int k = 1; k < 40; ++k) {
        sum += term;
        term *= -q / ((long double)(k + 1) * (k + 1));
        if (std::fabs((double)term) < 1e-22) break;
    }
    return 0.25 * (double)sum;
}

// int_X^inf j0(u)/u^2 du via the leading Hankel terms, integrated by parts
// twice. Error O(X^{-7/2}); callers keep X >= 455 so this is below 1e-9.
double tail_closure(double X) {
    const double c = std::sqrt(2.0 / kPi);
    const double chi = X - 0.25 * kPi;
    const double s = std::sin(chi), co = std::cos(chi);
    const double g = c * std::pow(X, -2.5);
    const double gp = -2.5 * c * std::pow(X, -3.5);
    // main term: int g cos = -g sin + g' cos + O(g'')
    double val = -g * s + gp * co;
    // correction term from the (1/(8u)) sin component of j0
    const double g2 = c * std::pow(X, -3.5) / 8.0;
    val += g2 * co;
    return val;
}

}  // namespace

double bessel_j0_tail(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_j0_tail requires x > 0");
    const double X = std::fmax(x, 455.0);
    double val = 0.0;
    if (X > x) {
        // panel endpoints at the pi-scale oscillation of J0, plus the branch
        // joint of the evaluator so every panel is smooth
        std::vector<double> pts;
        pts.push_back(x);
        for (double p = (std::floor(x / kPi) + 1.0) * kPi; p < X; p += kPi) pts.push_back(p);
        if (x < kJ0Joint && kJ0Joint < X) pts.push_back(kJ0Joint);
        std::sort(pts.begin(), pts.end());
        pts.push_back(X);
        auto f = [](double u) { return fast_j0(u) / (u * u); };
        val = adaptive_simpson_panels(f, pts, 1e-12).value;
    }
    return val + tail_closure(X);
}

double symbol_tail_fraction(double x) {
    return 1.0 / x - bessel_j0_tail(x);
}

double kernel_symbol_constant(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double X = 60.0;
    std::vector<double> pts;
    pts.push_back(0.0);
    for (double p = kPi; p < X; p += kPi) pts.push_back(p);
    pts.push_back(kJ0Joint);
    std::sort(pts.begin(), pts.end());
    pts.push_back(X);
    QuadResult body = adaptive_simpson_panels(one_minus_j0_over_u2, pts, tol);
    if (!body.converged) throw std::runtime_error("kernel_symbol_constant: quadrature failed");
    return 2.0 * kPi * (body.value + symbol_tail_fraction(X));
}

}  // namespace musk
