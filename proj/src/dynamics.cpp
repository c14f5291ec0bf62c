#include "musklab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "musklab/bessel_tail.hpp"

namespace musk {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kRk4RealAxisLimit = 2.785;
}  // namespace

Stepper::Stepper(const PeriodicGrid& grid, const QuadratureSpec& spec)
    : op_(grid, spec), symbol_constant_(kernel_symbol_constant(1e-9)) {}

double Stepper::dt_stability_limit() const {
    const PeriodicGrid& g = op_.grid();
    // fastest mode sits at the spectral corner (pi n/P, pi n/P)
    const double xi_max = std::sqrt(2.0) * kPi * g.n / g.period;
    return kRk4RealAxisLimit / (symbol_constant_ * xi_max);
}

double Stepper::dt_from_factor(double dt_factor) const {
    return dt_factor * op_.grid().spacing() / symbol_constant_;
}

void Stepper::step(InterfaceField& field, double dt, int threads, double rhs_sign) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (dt > dt_stability_limit() * (1.0 + 1e-9))
        throw std::invalid_argument("step: dt violates the explicit stability bound");

    const std::size_t total = field.values.size();
    RhsResult r;
    auto rate_of = [&](const std::vector<double>& vals, std::vector<double>& out) {
        InterfaceField tmp;
        tmp.grid = field.grid;
        tmp.time = field.time;
        tmp.values = vals;
        op_.apply(tmp, r, threads);
        out = std::move(r.rate);
        last_budget_ = std::fmax(last_budget_, r.error_budget);
        if (rhs_sign != 1.0)
            for (double& v : out) v *= rhs_sign;
    };

    last_budget_ = 0.0;
    rate_of(field.values, k1_);
    stage_.resize(total);
    for (std::size_t i = 0; i < total; ++i) stage_[i] = field.values[i] + 0.5 * dt * k1_[i];
    rate_of(stage_, k2_);
    for (std::size_t i = 0; i < total; ++i) stage_[i] = field.values[i] + 0.5 * dt * k2_[i];
    rate_of(stage_, k3_);
    for (std::size_t i = 0; i < total; ++i) stage_[i] = field.values[i] + dt * k3_[i];
    rate_of(stage_, k4_);
    for (std::size_t i = 0; i < total; ++i)
        field.values[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    field.time += dt;

    if (!field.finite()) throw BlowupError("step: field became non-finite");
}

namespace {

struct BestPair {
    double deficit = 1e300;
    long a = -1, b = -1;

    void consider(double d, long pa, long pb) {
        if (pa > pb) std::swap(pa, pb);
        if (d < deficit || (d == deficit && (a < 0 || pa < a || (pa == a && pb < b)))) {
            deficit = d;
            a = pa;
            b = pb;
        }
    }
    void merge(const BestPair& o) {
        if (o.a >= 0) consider(o.deficit, o.a, o.b);
    }
};

// profile(torus distance) per index offset; entries past the cutoff are +inf
std::vector<double> offset_profile_table(const PeriodicGrid& g, const Modulus& m,
                                         double cutoff) {
    const int n = g.n;
    std::vector<double> table(static_cast<std::size_t>(n) * n);
    const double dx = g.spacing();
    for (int di = 0; di < n; ++di) {
        const double ddi = std::min(di, n - di) * dx;
        for (int dj = 0; dj < n; ++dj) {
            const double ddj = std::min(dj, n - dj) * dx;
            const double d = std::sqrt(ddi * ddi + ddj * ddj);
            table[static_cast<std::size_t>(di) * n + dj] =
                (d > 0.0 && d < cutoff) ? m.profile(d) : 1e300;
        }
    }
    return table;
}

DeficitResult finish_deficit(const InterfaceField& field, const BestPair& best, long scanned) {
    DeficitResult out;
    out.min_deficit = best.deficit;
    out.pairs_scanned = scanned;
    if (best.a < 0) return out;
    const int n = field.grid.n;
    long p0 = best.a, p1 = best.b;
    if (field.values[p0] < field.values[p1]) std::swap(p0, p1);
    out.p0i = static_cast<int>(p0 / n);
    out.p0j = static_cast<int>(p0 % n);
    out.p1i = static_cast<int>(p1 / n);
    out.p1j = static_cast<int>(p1 % n);
    return out;
}

}  // namespace

DeficitResult modulus_monitor(const InterfaceField& field, double t, const Modulus& m,
                              double radius_cap, int threads, long pair_samples,
                              std::uint64_t seed) {
    const PeriodicGrid& g = field.grid;
    const int n = g.n;
    const long N = static_cast<long>(n) * n;
    double cutoff = m.saturation_radius();
    if (radius_cap > 0.0) cutoff = std::fmin(cutoff, radius_cap);
    const std::vector<double> prof = offset_profile_table(g, m, cutoff);
    const double jt = m.j(t);
    const double* f = field.values.data();

    const int nthreads = resolve_threads(threads);
    std::vector<BestPair> partial(std::max(nthreads, 1));
    long scanned = 0;

    if (n <= 64) {
        const int mask = n - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads) reduction(+ : scanned)
#endif
        for (long a = 0; a < N; ++a) {
            BestPair& best = partial[current_thread()];
            const int ai = static_cast<int>(a / n), aj = static_cast<int>(a % n);
            const double fa = f[a];
            for (int bi = ai; bi < n; ++bi) {
                const double* frow = f + static_cast<std::size_t>(bi) * n;
                const double* prow = prof.data() + static_cast<std::size_t>(bi - ai) * n;
                for (int bj = (bi == ai) ? aj + 1 : 0; bj < n; ++bj) {
                    const double p = prow[(bj - aj) & mask];
                    ++scanned;
                    if (p >= 1e300) continue;
                    const double deficit = jt + p - std::fabs(fa - frow[bj]);
                    if (deficit <= best.deficit)
                        best.consider(deficit, a, static_cast<long>(bi) * n + bj);
                }
            }
        }
    } else {
        // near-offset pairs, then distance-stratified random pairs
        BestPair& best = partial[0];
        const int w = 4;
        for (long a = 0; a < N; ++a) {
            const int ai = static_cast<int>(a / n), aj = static_cast<int>(a % n);
            const double fa = f[a];
            for (int di = -w; di <= w; ++di) {
                for (int dj = -w; dj <= w; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const long b = static_cast<long>(g.wrap(ai + di)) * n + g.wrap(aj + dj);
                    const double p =
                        prof[static_cast<std::size_t>(di & (n - 1)) * n + (dj & (n - 1))];
                    if (p >= 1e300) continue;
                    best.consider(jt + p - std::fabs(fa - f[b]), a, b);
                    ++scanned;
                }
            }
        }
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const int strata = 32;
        const double dmax = std::fmin(cutoff, 0.5 * g.period * std::sqrt(2.0));
        for (long s = 0; s < pair_samples; ++s) {
            const long a = static_cast<long>(rng() % static_cast<std::uint64_t>(N));
            const double r = dmax * (s % strata + u01(rng)) / strata;
            const double phi = 2.0 * kPi * u01(rng);
            const int di = static_cast<int>(std::lround(r * std::cos(phi) / g.spacing()));
            const int dj = static_cast<int>(std::lround(r * std::sin(phi) / g.spacing()));
            if (di == 0 && dj == 0) continue;
            const int ai = static_cast<int>(a / n), aj = static_cast<int>(a % n);
            const long b = static_cast<long>(g.wrap(ai + di)) * n + g.wrap(aj + dj);
            const double p = prof[static_cast<std::size_t>(di & (n - 1)) * n + (dj & (n - 1))];
            if (p >= 1e300) continue;
            best.consider(jt + p - std::fabs(f[a] - f[b]), a, b);
            ++scanned;
        }
    }

    BestPair best;
    for (const BestPair& p : partial) best.merge(p);
    DeficitResult out = finish_deficit(field, best, scanned);
    if (best.a < 0) out.min_deficit = jt + 1.0;  // nothing inside the cutoff
    return out;
}

DeficitResult modulus_monitor_reference(const InterfaceField& field, double t, const Modulus& m,
                                        double radius_cap) {
    const PeriodicGrid& g = field.grid;
    const int n = g.n;
    const long N = static_cast<long>(n) * n;
    double cutoff = m.saturation_radius();
    if (radius_cap > 0.0) cutoff = std::fmin(cutoff, radius_cap);
    const double jt = m.j(t);
    BestPair best;
    long scanned = 0;
    for (long a = 0; a < N; ++a) {
        for (long b = a + 1; b < N; ++b) {
            const double d = g.torus_dist(g.coord(static_cast<int>(a / n)),
                                          g.coord(static_cast<int>(a % n)),
                                          g.coord(static_cast<int>(b / n)),
                                          g.coord(static_cast<int>(b % n)));
            if (!(d > 0.0 && d < cutoff)) continue;
            best.consider(jt + m.profile(d) - std::fabs(field.values[a] - field.values[b]), a,
                          b);
            ++scanned;
        }
    }
    DeficitResult out = finish_deficit(field, best, scanned);
    if (best.a < 0) out.min_deficit = jt + 1.0;
    return out;
}

double lipschitz_norm_spectral(const InterfaceField& field) {
    Fft2D fft(field.grid);
    std::vector<double> gx, gy;
    fft.gradient(field.values, gx, gy);
    double m = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i)
        m = std::fmax(m, std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]));
    return m;
}

namespace {

bool rows_monotone(const std::vector<MonitorRow>& rows, double MonitorRow::*field,
                   double slack) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].*field > rows[i - 1].*field + slack) return false;
    return true;
}

}  // namespace

bool sup_norm_monotone(const std::vector<MonitorRow>& rows, double slack) {
    return rows_monotone(rows, &MonitorRow::sup_norm, slack);
}

bool l2_monotone(const std::vector<MonitorRow>& rows, double slack) {
    return rows_monotone(rows, &MonitorRow::l2_norm, slack);
}

CrossingReport build_crossing_report(const InterfaceField& field, double t, const Modulus& m,
                                     const DeficitResult& deficit) {
    const PeriodicGrid& g = field.grid;
    const int n = g.n;
    CrossingReport rep;
    rep.t0 = t;
    rep.x0i = deficit.p0i;
    rep.x0j = deficit.p0j;
    rep.y0i = deficit.p1i;
    rep.y0j = deficit.p1j;
    rep.deficit = deficit.min_deficit;

    const double sx = g.torus_delta(g.coord(rep.x0i) - g.coord(rep.y0i));
    const double sy = g.torus_delta(g.coord(rep.x0j) - g.coord(rep.y0j));
    rep.xi = std::sqrt(sx * sx + sy * sy);

    const double nu = m.nu();
    const double fx0 = field.at(rep.x0i, rep.x0j);
    const double fy0 = field.at(rep.y0i, rep.y0j);
    double order_margin = 1e300, upper_margin = 1e300, lower_margin = 1e300;
    for (int di = 0; di < n; ++di) {
        for (int dj = 0; dj < n; ++dj) {
            if (di == 0 && dj == 0) continue;
            const double hx = std::min(di, n - di) * g.spacing();
            const double hy = std::min(dj, n - dj) * g.spacing();
            const double hmag = std::sqrt(hx * hx + hy * hy);
            const double dfx = field.at(g.wrap(rep.x0i + di), g.wrap(rep.x0j + dj)) - fx0;
            const double dfy = field.at(g.wrap(rep.y0i + di), g.wrap(rep.y0j + dj)) - fy0;
            order_margin = std::fmin(order_margin, dfy - dfx);
            upper_margin = std::fmin(upper_margin, nu * hmag - dfx);
            lower_margin = std::fmin(lower_margin, dfy + nu * hmag);
        }
    }
    rep.pair_order_margin = order_margin;
    rep.x0_upper_margin = upper_margin;
    rep.y0_lower_margin = lower_margin;

    Fft2D fft(g);
    std::vector<double> gx, gy;
    fft.gradient(field.values, gx, gy);
    const double target_mag = m.omega_slope_envelope(rep.xi);
    const double tx = target_mag * sx / rep.xi;
    const double ty = target_mag * sy / rep.xi;
    auto compare = [&](int i, int j, double& angle_deg, double& ratio) {
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        const double gxx = gx[idx], gyy = gy[idx];
        const double gm = std::sqrt(gxx * gxx + gyy * gyy);
        const double tm = std::sqrt(tx * tx + ty * ty);
        ratio = tm > 0.0 ? gm / tm : 0.0;
        const double dot = (gxx * tx + gyy * ty) / std::fmax(gm * tm, 1e-300);
        angle_deg = std::acos(std::clamp(dot, -1.0, 1.0)) * 180.0 / kPi;
    };
    compare(rep.x0i, rep.x0j, rep.grad_angle_x0_deg, rep.grad_mag_ratio_x0);
    compare(rep.y0i, rep.y0j, rep.grad_angle_y0_deg, rep.grad_mag_ratio_y0);

    rep.side_conditions_ok = order_margin >= -1e-6 && upper_margin >= -1e-6 &&
                             lower_margin >= -1e-6 && rep.grad_angle_x0_deg <= 5.0 &&
                             rep.grad_angle_y0_deg <= 5.0 &&
                             std::fabs(rep.grad_mag_ratio_x0 - 1.0) <= 0.10 &&
                             std::fabs(rep.grad_mag_ratio_y0 - 1.0) <= 0.10;
    return rep;
}

std::optional<CrossingReport> breakthrough_detect(const MonitorLog& log) { return log.crossing; }

ContradictionVerdict contradiction_chain(const CrossingReport& report,
                                         const InterfaceField& field, const Modulus& m,
                                         const QuadratureSpec& spec0) {
    if (!(report.xi < m.saturation_radius()))
        throw std::domain_error(
            "contradiction_chain: crossing pairs must be closer than 2/nu");
    const PeriodicGrid& g = field.grid;
    const QuadratureSpec spec = spec0.resolved(g);

    ContradictionVerdict v;
    v.t0 = report.t0;
    v.xi = report.xi;
    v.factor = 1.0 / (3.0 * std::pow(m.L() * m.L() + 1.0, 1.5));
    v.jprime = m.j_prime(report.t0);
    const double fd_step = 1e-6 * m.tstar();
    const double t_lo = std::fmax(report.t0 - fd_step, 0.0);
    v.jprime_fd = (m.j(report.t0 + fd_step) - m.j(t_lo)) / (report.t0 + fd_step - t_lo);

    const double sx = g.torus_delta(g.coord(report.x0i) - g.coord(report.y0i));
    const double sy = g.torus_delta(g.coord(report.x0j) - g.coord(report.y0j));
    const double w = m.omega_slope_envelope(report.xi);
    ChainQuadrature cq;
    cq.rho0 = spec.rho0;
    cq.outer = spec.outer;
    cq.rings = spec.rings;
    cq.sectors = spec.sectors;
    PairRates pr = pair_rate_difference(
        [&field](double px, double py) { return bicubic_sample(field, px, py); },
        g.coord(report.x0i), g.coord(report.x0j), g.coord(report.x0i) - sx,
        g.coord(report.x0j) - sy, w * sx / report.xi, w * sy / report.xi, cq);
    v.rate_diff = pr.rate_diff;
    v.kernel_integral = pr.kernel_integral;

    const double jt = m.j(report.t0);
    const double nu = m.nu();
    v.dissipation = -std::fmin(nu * jt + 0.5 * nu * nu,
                               std::cbrt(jt) * std::pow(nu, 2.0 / 3.0));
    bool rearr_ok = true;
    try {
        v.rearrangement = rearrangement_rhs(m, report.t0, report.xi, 1e-8).value();
    } catch (const std::runtime_error&) {
        v.rearrangement = std::numeric_limits<double>::quiet_NaN();
        rearr_ok = false;
    }

    const double slack = 1e-3;
    auto rel = [&](double a, double b) {
        return slack * std::fmax(std::fabs(a), std::fabs(b));
    };
    v.links_ok[0] = v.jprime <= v.rate_diff + rel(v.jprime, v.rate_diff);
    v.links_ok[1] =
        v.rate_diff <= v.factor * v.kernel_integral + rel(v.rate_diff, v.factor * v.kernel_integral);
    v.links_ok[2] = rearr_ok && v.kernel_integral <= v.rearrangement +
                                                         rel(v.kernel_integral, v.rearrangement);
    v.links_ok[3] = rearr_ok && v.rearrangement < v.dissipation;
    const char* names[4] = {"jprime<=rate_diff", "rate_diff<=factor*kernel",
                            "kernel<=rearrangement", "rearrangement<dissipation"};
    for (int i = 0; i < 4; ++i)
        if (!v.links_ok[i]) {
            v.failing_link = names[i];
            break;
        }
    return v;
}

}  // namespace musk
