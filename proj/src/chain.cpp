#include "musklab/chain.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace musk {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

CrossingProfile::CrossingProfile(const Modulus& m, double xi, double scale)
    : m_(m), xi_(xi), scale_(scale) {
    if (!(xi > 0.0) || !(xi < m.saturation_radius()))
        throw std::domain_error("crossing profile: xi must lie in (0, 2/nu)");
    if (!(scale > 0.0)) throw std::invalid_argument("crossing profile: scale must be positive");
}

double CrossingProfile::value(double px, double py) const {
    const double dy0 = std::sqrt((px - y0x()) * (px - y0x()) + py * py);
    const double dx0 = std::sqrt((px - x0x()) * (px - x0x()) + py * py);
    return 0.5 * scale_ * (m_.profile(dy0) - m_.profile(dx0));
}

double CrossingProfile::touching_slope() const { return m_.omega_slope_envelope(xi_); }

double CrossingProfile::worst_pair_margin(int samples, std::uint64_t seed) const {
    // sample pairs from a box generously covering the profile's support
    const double half = m_.saturation_radius() + xi_;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-half, half);
    double worst = 1e300;
    for (int s = 0; s < samples; ++s) {
        const double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng);
        const double d = std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by));
        const double margin = m_.profile(d) - (value(ax, ay) - value(bx, by));
        if (margin < worst) worst = margin;
    }
    return worst;
}

CrossingProfile::GridFixture CrossingProfile::sample(const PeriodicGrid& grid) const {
    const double dx = grid.spacing();
    int k = static_cast<int>(std::lround(xi_ / dx));
    k = std::max(1, std::min(k, grid.n / 2));
    GridFixture out;
    out.xi = k * dx;
    out.y0i = grid.n / 2 - k / 2;
    out.x0i = out.y0i + k;
    out.x0j = out.y0j = grid.n / 2;
    out.field.grid = grid;
    out.field.values.resize(static_cast<std::size_t>(grid.n) * grid.n);
    out.field.time = 0.0;
    const double x0c = grid.coord(out.x0i), y0c = grid.coord(out.y0i);
    const double colc = grid.coord(out.x0j);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            const double px = grid.coord(i), py = grid.coord(j);
            const double d_y0 = grid.torus_dist(px, py, y0c, colc);
            const double d_x0 = grid.torus_dist(px, py, x0c, colc);
            out.field.at(i, j) = 0.5 * scale_ * (m_.profile(d_y0) - m_.profile(d_x0));
        }
    }
    return out;
}

PairRates pair_rate_difference(const PlaneField& f, double x0x, double x0y, double y0x,
                               double y0y, double wx, double wy, const ChainQuadrature& q) {
    if (x0x == y0x && x0y == y0y)
        throw std::domain_error("pair_rate_difference: points must be distinct");
    if (!(q.rho0 > 0.0) || !(q.outer > q.rho0) || q.rings < 4 || q.sectors < 4 ||
        q.sectors % 2 != 0)
        throw std::invalid_argument("pair_rate_difference: invalid quadrature parameters");

    const double fx0 = f(x0x, x0y);
    const double fy0 = f(y0x, y0y);
    const double step = std::pow(q.outer / q.rho0, 1.0 / q.rings);
    const double dtheta = kTwoPi / q.sectors;

    PairRates out;
    for (int k = 0; k < q.rings; ++k) {
        const double r_in = q.rho0 * std::pow(step, k);
        const double r = std::sqrt(r_in * (r_in * step));
        const double w = (r_in * step - r_in) * r * dtheta;
        const double r3 = r * r * r;
        for (int m = 0; m < q.sectors; ++m) {
            const double theta = dtheta * (m + 0.5);
            const double hx = r * std::cos(theta);
            const double hy = r * std::sin(theta);
            const double da = f(x0x + hx, x0y + hy) - fx0;
            const double db = f(y0x + hx, y0y + hy) - fy0;
            const double gh = wx * hx + wy * hy;
            out.rate_diff += w * ((da - gh) / std::pow(da * da + r * r, 1.5) -
                                  (db - gh) / std::pow(db * db + r * r, 1.5));
            out.kernel_integral += w * (da - db) / r3;
            out.max_slope = std::fmax(out.max_slope,
                                      std::fmax(std::fabs(da), std::fabs(db)) / r);
            ++out.nodes;
        }
    }
    return out;
}

ChainReport crossing_bound_chain(const CrossingProfile& fixture, const ChainQuadrature& q0,
                                 double slack_rel) {
    const Modulus& m = fixture.modulus();
    ChainQuadrature q = q0;
    if (q.rho0 <= 0.0) q.rho0 = 1e-3 * std::fmin(fixture.xi(), 1.0);
    if (q.outer <= 0.0) q.outer = 2.0 * (m.saturation_radius() + fixture.xi());

    ChainReport rep;
    rep.xi = fixture.xi();
    rep.L = m.L();
    rep.slack_rel = slack_rel;
    rep.factor = 1.0 / (3.0 * std::pow(m.L() * m.L() + 1.0, 1.5));

    const double w = fixture.touching_slope();  // along x0 - y0 = +x axis
    PairRates pr = pair_rate_difference(
        [&fixture](double px, double py) { return fixture.value(px, py); }, fixture.x0x(), 0.0,
        fixture.y0x(), 0.0, w, 0.0, q);
    rep.lhs_rate_diff = pr.rate_diff;
    rep.kernel_integral = pr.kernel_integral;

    // the fixture is a crossing for the saturated modulus, so the 1-D bound
    // is evaluated there (j = 0)
    Rearrangement r = rearrangement_rhs(m, m.tstar(), fixture.xi(), 1e-8);
    rep.rearrangement = r.value();
    // -min{ nu*j + nu^2/2, j^{1/3} nu^{2/3} } degenerates to 0 at j = 0,
    // leaving the strict sign condition on the rearrangement value
    rep.dissipation_limit = 0.0;

    const double s1 = slack_rel * std::fmax(std::fabs(rep.lhs_rate_diff),
                                            std::fabs(rep.factor * rep.kernel_integral));
    rep.margin_rate = rep.factor * rep.kernel_integral - rep.lhs_rate_diff;
    rep.rate_le_kernel = rep.margin_rate >= -s1;

    const double s2 = slack_rel * std::fmax(std::fabs(rep.kernel_integral),
                                            std::fabs(rep.rearrangement));
    rep.margin_rearr = rep.rearrangement - rep.kernel_integral;
    rep.kernel_le_rearr = rep.margin_rearr >= -s2;

    rep.margin_bound = rep.dissipation_limit - rep.rearrangement;
    rep.rearr_lt_bound = rep.rearrangement < rep.dissipation_limit;

    rep.all_hold = rep.rate_le_kernel && rep.kernel_le_rearr && rep.rearr_lt_bound;
    return rep;
}

}  // namespace musk
