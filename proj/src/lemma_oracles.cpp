#include "musklab/lemma_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "musklab/adaptive.hpp"
#include "musklab/threads.hpp"

namespace musk {

namespace {

double g_of(double a, double b) { return (a + b) / std::pow(a * a + 1.0, 1.5); }

double quotient(double ah, double al, double b, double rhs_coeff) {
    return (g_of(ah, b) - g_of(al, b)) / (ah - al) - rhs_coeff;
}

}  // namespace

bool in_constraint_box(const SlopeTriple& t, double L, double slack) {
    const double nu = nu_of(L);
    return t.alpha_lo <= t.alpha_hi + slack && t.alpha_lo >= -L - slack &&
           t.alpha_lo <= nu + slack && t.alpha_hi >= -nu - slack && t.alpha_hi <= L + slack &&
           std::fabs(t.beta) <= nu + slack;
}

double monotonicity_gap(const SlopeTriple& t, double L) {
    if (!in_constraint_box(t, L, 1e-12))
        throw std::domain_error("monotonicity_gap: triple outside the constraint box");
    const double rhs = (t.alpha_hi - t.alpha_lo) / (3.0 * std::pow(L * L + 1.0, 1.5));
    return g_of(t.alpha_hi, t.beta) - g_of(t.alpha_lo, t.beta) - rhs;
}

SlopeTriple canonical_triple(const SlopeTriple& t) {
    if (t.alpha_hi + t.alpha_lo < 0.0)
        return SlopeTriple{-t.alpha_lo, -t.alpha_hi, -t.beta};
    return t;
}

namespace {

MonotonicityReport sweep(double L, int resolution, int threads, bool parallel) {
    if (resolution < 2) throw std::invalid_argument("verify_monotonicity: resolution >= 2");
    const double nu = nu_of(L);
    const double rhs_coeff = 1.0 / (3.0 * std::pow(L * L + 1.0, 1.5));
    const int nres = resolution;

    std::vector<double> lo_vals(nres), hi_vals(nres), beta_vals(nres);
    for (int i = 0; i < nres; ++i) {
        const double s = static_cast<double>(i) / (nres - 1);
        lo_vals[i] = -L + s * (L + nu);
        hi_vals[i] = -nu + s * (L + nu);
        beta_vals[i] = -nu + s * (2.0 * nu);
    }

    struct Best {
        double gap = 1e300;
        double quo = 1e300;
        SlopeTriple gap_arg, quo_arg;
        long count = 0;
    };

    const int nthreads = parallel ? resolve_threads(threads) : 1;
    std::vector<Best> partial(std::max(nthreads, 1));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads) if (parallel)
#endif
    for (int ih = 0; ih < nres; ++ih) {
        Best& best = partial[current_thread()];
        const double ah = hi_vals[ih];
        for (int il = 0; il < nres; ++il) {
            const double al = lo_vals[il];
            if (al > ah) continue;
            for (int ib = 0; ib < nres; ++ib) {
                const double b = beta_vals[ib];
                const double gl = g_of(al, b);
                const double gh = g_of(ah, b);
                const double gap = gh - gl - (ah - al) * rhs_coeff;
                ++best.count;
                if (gap < best.gap) {
                    best.gap = gap;
                    best.gap_arg = {ah, al, b};
                }
                if (ah - al > 1e-12) {
                    const double q = (gh - gl) / (ah - al) - rhs_coeff;
                    if (q < best.quo) {
                        best.quo = q;
                        best.quo_arg = {ah, al, b};
                    }
                }
            }
        }
    }

    MonotonicityReport rep;
    rep.L = L;
    rep.resolution = nres;
    rep.min_gap = 1e300;
    rep.min_quotient = 1e300;
    for (const Best& b : partial) {
        rep.triples_checked += b.count;
        if (b.gap < rep.min_gap) {
            rep.min_gap = b.gap;
            rep.argmin_gap = b.gap_arg;
        }
        if (b.quo < rep.min_quotient) {
            rep.min_quotient = b.quo;
            rep.argmin_quotient = canonical_triple(b.quo_arg);
        }
    }

    // coordinate descent with shrinking step from the quotient argmin
    SlopeTriple cur = rep.argmin_quotient;
    double fcur = quotient(cur.alpha_hi, cur.alpha_lo, cur.beta, rhs_coeff);
    double step = (L + nu) / (nres - 1);
    for (int it = 0; it < 50; ++it) {
        bool improved = false;
        for (int axis = 0; axis < 3; ++axis) {
            for (double sgn : {-1.0, 1.0}) {
                SlopeTriple trial = cur;
                double* v = axis == 0 ? &trial.alpha_hi : axis == 1 ? &trial.alpha_lo : &trial.beta;
                *v += sgn * step;
                trial.alpha_hi = std::clamp(trial.alpha_hi, -nu, L);
                trial.alpha_lo = std::clamp(trial.alpha_lo, -L, nu);
                trial.beta = std::clamp(trial.beta, -nu, nu);
                if (trial.alpha_hi - trial.alpha_lo < 1e-9) continue;
                const double ft =
                    quotient(trial.alpha_hi, trial.alpha_lo, trial.beta, rhs_coeff);
                if (ft < fcur) {
                    fcur = ft;
                    cur = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    rep.refined_min_quotient = fcur;
    rep.refined_argmin = canonical_triple(cur);

    rep.pass = rep.min_gap >= -rep.slack && rep.min_quotient >= -rep.slack &&
               rep.refined_min_quotient >= -rep.slack;
    return rep;
}

}  // namespace

MonotonicityReport verify_monotonicity(double L, int resolution, int threads) {
    return sweep(L, resolution, threads, true);
}

MonotonicityReport verify_monotonicity_reference(double L, int resolution) {
    return sweep(L, resolution, 1, false);
}

double kiselev_integral_constant(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double eps = 1e-6;
    auto f = [](double e) {
        return (std::pow(1.0 + 2.0 * e, 1.5) + std::pow(1.0 - 2.0 * e, 1.5) - 2.0) / (e * e);
    };
    QuadResult q = adaptive_simpson(f, eps, 0.5, tol);
    if (!q.converged)
        throw std::runtime_error("kiselev_integral_constant: quadrature did not converge");
    // integrand -> 3 at e -> 0 (second-order Taylor); [0, eps] in closed form
    return 3.0 * eps + q.value;
}

namespace {

// breakpoints of s -> profile(s) hit by the affine argument map s = c0 + c1*e
void add_knot_breakpoints(std::vector<double>& pts, double c0, double c1, double lo, double hi,
                          const Modulus& m) {
    for (double knot : {2.0, m.saturation_radius()}) {
        if (c1 == 0.0) continue;
        const double e = (knot - c0) / c1;
        if (e > lo && e < hi) pts.push_back(e);
    }
}

}  // namespace

Rearrangement rearrangement_rhs(const Modulus& m, double t, double xi, double tol) {
    if (!(xi > 0.0)) throw std::domain_error("rearrangement_rhs: xi must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("rearrangement_rhs: tol must be positive");
    const double nu = m.nu();
    const double jt = m.j(t);
    const double w_xi = m.profile(xi);

    Rearrangement out;

    // near integral: j cancels in the symmetric second difference
    {
        auto f = [&](double e) {
            return (m.profile(xi + 2.0 * e) + m.profile(xi - 2.0 * e) - 2.0 * w_xi) / (e * e);
        };
        const double eps = std::fmin(1e-4, 0.25 * xi);
        std::vector<double> pts{eps, 0.5 * xi};
        add_knot_breakpoints(pts, xi, 2.0, eps, 0.5 * xi, m);
        add_knot_breakpoints(pts, xi, -2.0, eps, 0.5 * xi, m);
        std::sort(pts.begin(), pts.end());
        QuadResult q = adaptive_simpson_panels(f, pts, tol);

        // [0, eps] via the analytic e -> 0 limit 4 p''(xi) of the integrand
        // (taken one-sidedly; exactly on a knot the true integrand is
        // singular and the adaptive part above will fail to converge)
        double head = 0.0;
        if (xi < 2.0) {
            const double ppp = -3.0 * nu / (std::pow(2.0, 3.5) * std::sqrt(xi));
            head = 4.0 * ppp * eps;
        }  // affine and saturated branches have zero second derivative
        out.near_part = q.value + head;
        out.error += q.error;
        out.evals += q.evals;
        if (!q.converged)
            throw std::runtime_error("rearrangement_rhs: near integral did not converge");
    }

    // far integral on [xi/2, 1/nu + xi/2], then the saturated closed-form tail
    {
        const double A = 1.0 / nu + 0.5 * xi;
        auto f = [&](double e) {
            return (m.profile(2.0 * e + xi) - m.profile(2.0 * e - xi) - 2.0 * (jt + w_xi)) /
                   (e * e);
        };
        std::vector<double> pts{0.5 * xi, A};
        add_knot_breakpoints(pts, xi, 2.0, 0.5 * xi, A, m);
        add_knot_breakpoints(pts, -xi, 2.0, 0.5 * xi, A, m);
        std::sort(pts.begin(), pts.end());
        QuadResult q = adaptive_simpson_panels(f, pts, tol);
        out.far_part = q.value - 2.0 * (jt + w_xi) / A;
        out.error += q.error;
        out.evals += q.evals;
        if (!q.converged)
            throw std::runtime_error("rearrangement_rhs: far integral did not converge");
    }
    return out;
}

DissipationReport dissipation_bound(const Modulus& m, double t, double xi) {
    if (!(xi > 0.0) || !(xi < m.saturation_radius()))
        throw std::domain_error("dissipation_bound: xi must lie in (0, 2/nu)");
    DissipationReport rep;
    rep.xi = xi;
    const double nu = m.nu();
    const double w0 = m.j(t);  // omega(t, 0)
    rep.bound = -std::fmin(nu * w0 + 0.5 * nu * nu,
                           std::cbrt(w0) * std::pow(nu, 2.0 / 3.0));
    try {
        Rearrangement r = rearrangement_rhs(m, t, xi, 1e-8);
        rep.near_integral = r.near_part;
        rep.far_integral = r.far_part;
        rep.converged = true;
        rep.holds = r.value() < rep.bound;
    } catch (const std::runtime_error&) {
        rep.converged = false;
        rep.holds = false;
    }
    return rep;
}

}  // namespace musk
