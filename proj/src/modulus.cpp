#include "musklab/modulus.hpp"

#include <cmath>
#include <stdexcept>

namespace musk {

namespace {

void require_budget(double L) {
    if (!(L >= 1.0)) {
        throw std::domain_error("slope budget L must satisfy L >= 1");
    }
}

}  // namespace

double nu_of(double L) {
    require_budget(L);
    return L / (3.0 * std::pow(L * L + 1.0, 1.5));
}

long double nu_of_ld(long double L) {
    if (!(L >= 1.0L)) throw std::domain_error("slope budget L must satisfy L >= 1");
    return L / (3.0L * std::pow(L * L + 1.0L, 1.5L));
}

FlatteningClock FlatteningClock::for_budget(double L) {
    require_budget(L);
    FlatteningClock c;
    c.L = L;
    c.nu = nu_of(L);
    const double nu = c.nu;
    c.t1 = L * std::log(2.0 / nu) / (nu * nu);
    c.t2 = c.t1 + (nu / 2.0 - std::pow(nu, 4) / 8.0) * (2.0 * L / (nu * nu * nu));
    c.tstar = c.t2 + 3.0 / 8.0 * nu * L;
    return c;
}

double FlatteningClock::j(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("j(t) requires t >= 0");
    if (t >= tstar) return 0.0;
    if (t <= t1) return std::exp(-nu * nu * t / L);
    if (t <= t2) return nu / 2.0 - (nu * nu * nu) / (2.0 * L) * (t - t1);
    // j^{2/3} decays affinely on the last phase
    const double u = std::pow(std::pow(nu, 4) / 8.0, 2.0 / 3.0) -
                     (2.0 * std::pow(nu, 5.0 / 3.0)) / (3.0 * L) * (t - t2);
    return u <= 0.0 ? 0.0 : std::pow(u, 1.5);
}

double FlatteningClock::j_prime(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("j'(t) requires t >= 0");
    if (t >= tstar) return 0.0;
    if (t <= t1) return -(nu * nu / L) * std::exp(-nu * nu * t / L);
    if (t <= t2) return -(nu * nu * nu) / (2.0 * L);
    return -(std::pow(nu, 5.0 / 3.0) / L) * std::cbrt(j(t));
}

double FlatteningClock::j_prime_floor(double j_value) const {
    const double a = (nu * nu / L) * j_value + (nu * nu * nu) / (2.0 * L);
    const double b = (std::pow(nu, 5.0 / 3.0) / L) * std::cbrt(j_value);
    return -std::fmin(a, b);
}

double tstar_of(double L) {
    return FlatteningClock::for_budget(L).tstar;
}

long double tstar_of_ld(long double L) {
    const long double nu = nu_of_ld(L);
    return L * std::log(2.0L / nu) / (nu * nu) +
           (nu / 2.0L - nu * nu * nu * nu / 8.0L) * (2.0L * L / (nu * nu * nu)) +
           3.0L / 8.0L * nu * L;
}

Modulus Modulus::for_budget(double L) {
    return Modulus(FlatteningClock::for_budget(L));
}

double Modulus::profile(double r) const {
    if (!(r >= 0.0)) throw std::domain_error("omega requires r >= 0");
    const double nu = clock_.nu;
    if (r <= 2.0) return nu * (r - std::pow(r, 1.5) / std::pow(2.0, 1.5));
    if (r <= 2.0 / nu) return 0.5 * nu * r;
    return 1.0;
}

double Modulus::omega(double t, double r) const {
    return clock_.j(t) + profile(r);
}

std::pair<double, double> Modulus::omega_slope(double r) const {
    if (!(r > 0.0)) throw std::domain_error("omega_slope requires r > 0");
    const double nu = clock_.nu;
    const double sat = 2.0 / nu;
    auto branch = [&](double s, bool from_left) {
        if (s < 2.0 || (s == 2.0 && from_left))
            return nu * (1.0 - 1.5 * std::sqrt(s) / std::pow(2.0, 1.5));
        if (s < sat || (s == sat && from_left)) return 0.5 * nu;
        return 0.0;
    };
    return {branch(r, true), branch(r, false)};
}

double Modulus::omega_slope_envelope(double r) const {
    auto [lo, hi] = omega_slope(r);
    return std::fmax(std::fabs(lo), std::fabs(hi));
}

}  // namespace musk
