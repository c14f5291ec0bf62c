#pragma once

#include <utility>

namespace musk {

// nu(L) = L / (3 (L^2+1)^{3/2}), defined for slope budgets L >= 1.
// Strictly decreasing on [1, inf), so nu <= nu(1) ~ 0.1179 < 5^{-1/2}.
double nu_of(double L);
long double nu_of_ld(long double L);

// Phase boundaries and extinction time of the flattening clock j(t).
// j solves, with j(0) = 1:
//   j' = -(nu^2/L) j            while nu/2 < j <= 1        (ends at t1)
//   j' = -nu^3/(2L)             while nu^4/8 < j <= nu/2   (ends at t2)
//   j' = -(nu^{5/3}/L) j^{1/3}  while 0 <= j <= nu^4/8     (hits 0 at tstar)
// Each phase has a closed-form solution; the pieces are stitched C^1.
struct FlatteningClock {
    double L = 0.0;
    double nu = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double tstar = 0.0;

    static FlatteningClock for_budget(double L);

    double j(double t) const;        // closed-form piecewise solution
    double j_prime(double t) const;  // phase derivative (0 past tstar)

    // -min{ (nu^2/L) j + nu^3/(2L), (nu^{5/3}/L) j^{1/3} }: the C^1 lower
    // bound j' must respect on (0, tstar).
    double j_prime_floor(double j_value) const;
};

double tstar_of(double L);
long double tstar_of_ld(long double L);

// Time-dependent modulus of continuity
//   omega(t, r) = j(t) + profile(r)
// with the three-branch r-profile
//   nu (r - r^{3/2}/2^{3/2})  on [0, 2]
//   (nu/2) r                  on [2, 2/nu]
//   1                         on [2/nu, inf).
class Modulus {
public:
    static Modulus for_budget(double L);

    double L() const { return clock_.L; }
    double nu() const { return clock_.nu; }
    const FlatteningClock& clock() const { return clock_; }
    double saturation_radius() const { return 2.0 / clock_.nu; }

    double profile(double r) const;          // omega at j = 0
    double omega(double t, double r) const;  // j(t) + profile(r)

    // One-sided (left, right) r-derivatives of the profile. Equal away from
    // the knots r = 2 and r = 2/nu; r = 0 is rejected (no radial direction).
    std::pair<double, double> omega_slope(double r) const;

    // max-magnitude one-sided slope; what monitors use at knots
    double omega_slope_envelope(double r) const;

    double j(double t) const { return clock_.j(t); }
    double j_prime(double t) const { return clock_.j_prime(t); }
    double tstar() const { return clock_.tstar; }

private:
    explicit Modulus(FlatteningClock clock) : clock_(clock) {}
    FlatteningClock clock_;
};

}  // namespace musk
