#include "musklab/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace musk {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

MuskatOperator::MuskatOperator(const PeriodicGrid& grid, const QuadratureSpec& spec)
    : grid_(grid),
      spec_(spec.resolved(grid)),
      table_(PolarTable::build(grid, spec_)),
      fft_(grid),
      far_mult_(far_multiplier_table(grid, spec_.outer)) {}

void MuskatOperator::prepare(const InterfaceField& field, std::vector<double>& gx,
                             std::vector<double>& gy, std::vector<double>& far,
                             RhsResult& out) const {
    if (field.grid.n != grid_.n || field.grid.period != grid_.period)
        throw std::invalid_argument("muskat_rhs: field grid does not match operator grid");
    if (!field.finite()) throw std::invalid_argument("muskat_rhs: field has non-finite values");

    fft_.gradient(field.values, gx, gy);
    fft_.apply_multiplier(field.values, far_mult_, far);

    // inner disk: |integrand| <= H2/(2|h|), integrated over |h| <= rho0
    const double h2 = hessian_bound_estimate(field);
    const double inner = kPi * h2 * spec_.rho0;
    // far field beyond R uses the linearized denominator; the remainder is
    // bounded with M = sup|f - mean| and the measured slope
    const double M = [&] {
        const double mu = mean_value(field.values);
        double m = 0.0;
        for (double v : field.values) m = std::fmax(m, std::fabs(v - mu));
        return m;
    }();
    const double lf = lipschitz_norm(field);
    const double R = spec_.outer;
    const double far_mismatch = 8.0 * kPi * M * M * M / (R * R * R) +
                                6.0 * kPi * M * M * lf / (R * R);
    out.error_budget = inner + far_mismatch;
    out.max_slope_seen = 0.0;
    out.slope_cap_violations = 0;
}

void MuskatOperator::apply(const InterfaceField& field, RhsResult& out, int threads) const {
    std::vector<double> gx, gy, far;
    prepare(field, gx, gy, far, out);

    const int n = grid_.n;
    const int mask = n - 1;
    const std::size_t total = static_cast<std::size_t>(n) * n;
    out.rate.assign(total, 0.0);

    const int S = table_.sectors;
    const int half = S / 2;
    const int rings = table_.rings;
    const double* f = field.values.data();
    const int nthreads = resolve_threads(threads);

    double max_slope = 0.0;
    long violations = 0;
    const double cap = spec_.slope_cap;

    if (spec_.interpolation == Interpolation::bicubic) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(max : max_slope) reduction(+ : violations)
#endif
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * n + j;
                const double f0 = f[idx];
                const double gx0 = gx[idx];
                const double gy0 = gy[idx];
                double acc = 0.0;
                for (int k = 0; k < rings; ++k) {
                    for (int m = 0; m < half; ++m) {
                        const PolarNode& na = table_.node(k, m);
                        const PolarNode& nb = table_.node(k, m + half);
                        double va = 0.0, vb = 0.0;
                        for (int a = 0; a < 4; ++a) {
                            const int ra = ((i + na.di + a) & mask) * n;
                            const int rb = ((i + nb.di + a) & mask) * n;
                            const double* wa = na.w16 + a * 4;
                            const double* wb = nb.w16 + a * 4;
                            for (int b = 0; b < 4; ++b) {
                                va += wa[b] * f[ra + ((j + na.dj + b) & mask)];
                                vb += wb[b] * f[rb + ((j + nb.dj + b) & mask)];
                            }
                        }
                        const double da = va - f0;
                        const double db = vb - f0;
                        const double r2 = na.radius * na.radius;
                        const double gh = gx0 * na.hx + gy0 * na.hy;
                        const double Da = std::pow(da * da + r2, 1.5);
                        const double Db = std::pow(db * db + r2, 1.5);
                        acc += na.weight * ((da - gh) / Da + (db + gh) / Db);
                        const double slope =
                            std::fmax(std::fabs(da), std::fabs(db)) / na.radius;
                        if (slope > max_slope) max_slope = slope;
                        if (cap > 0.0 && slope > cap) ++violations;
                    }
                }
                out.rate[idx] = acc + far[idx];
            }
        }
    } else {
        // trigonometric sampling: one exact spectral shift per node; loops
        // run node-outer so each point still accumulates in node order
        std::vector<double> sa, sb;
        for (int k = 0; k < rings; ++k) {
            for (int m = 0; m < half; ++m) {
                const PolarNode& na = table_.node(k, m);
                const PolarNode& nb = table_.node(k, m + half);
                fft_.shift(field.values, na.hx, na.hy, sa);
                fft_.shift(field.values, nb.hx, nb.hy, sb);
                const double r2 = na.radius * na.radius;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(max : max_slope) reduction(+ : violations)
#endif
                for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
                    const double f0 = f[idx];
                    const double da = sa[idx] - f0;
                    const double db = sb[idx] - f0;
                    const double gh = gx[idx] * na.hx + gy[idx] * na.hy;
                    const double Da = std::pow(da * da + r2, 1.5);
                    const double Db = std::pow(db * db + r2, 1.5);
                    out.rate[idx] += na.weight * ((da - gh) / Da + (db + gh) / Db);
                    const double slope = std::fmax(std::fabs(da), std::fabs(db)) / na.radius;
                    if (slope > max_slope) max_slope = slope;
                    if (cap > 0.0 && slope > cap) ++violations;
                }
            }
        }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx)
            out.rate[idx] += far[idx];
    }

    out.max_slope_seen = max_slope;
    out.slope_cap_violations = violations;
    for (double v : out.rate)
        if (!std::isfinite(v)) throw std::runtime_error("muskat_rhs: non-finite rate");
}

void MuskatOperator::apply_reference(const InterfaceField& field, RhsResult& out) const {
    std::vector<double> gx, gy, far;
    prepare(field, gx, gy, far, out);

    const int n = grid_.n;
    const double dx = grid_.spacing();
    const std::size_t total = static_cast<std::size_t>(n) * n;
    out.rate.assign(total, 0.0);

    const double step = std::pow(spec_.outer / spec_.rho0, 1.0 / spec_.rings);
    const double dtheta = kTwoPi / spec_.sectors;

    auto sample = [&](double x1_cells, double x2_cells) {
        // bicubic interpolation at a point given in units of the spacing
        const double bx = std::floor(x1_cells), by = std::floor(x2_cells);
        double wx[4], wy[4];
        bicubic_weights(x1_cells - bx, wx);
        bicubic_weights(x2_cells - by, wy);
        double v = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                v += wx[a] * wy[b] *
                     field.at(field.grid.wrap(static_cast<int>(bx) - 1 + a),
                              field.grid.wrap(static_cast<int>(by) - 1 + b));
        return v;
    };

    double max_slope = 0.0;
    long violations = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            const double f0 = field.values[idx];
            double acc = 0.0;
            for (int k = 0; k < spec_.rings; ++k) {
                const double r_in = spec_.rho0 * std::pow(step, k);
                const double r = std::sqrt(r_in * (r_in * step));
                const double w = (r_in * step - r_in) * r * dtheta;
                for (int m = 0; m < spec_.sectors / 2; ++m) {
                    const double theta = dtheta * (m + 0.5);
                    const double hx = r * std::cos(theta);
                    const double hy = r * std::sin(theta);
                    const double da = sample(i + hx / dx, j + hy / dx) - f0;
                    const double db = sample(i - hx / dx, j - hy / dx) - f0;
                    const double gh = gx[idx] * hx + gy[idx] * hy;
                    acc += w * ((da - gh) / std::pow(da * da + r * r, 1.5) +
                                (db + gh) / std::pow(db * db + r * r, 1.5));
                    const double slope = std::fmax(std::fabs(da), std::fabs(db)) / r;
                    max_slope = std::fmax(max_slope, slope);
                    if (spec_.slope_cap > 0.0 && slope > spec_.slope_cap) ++violations;
                }
            }
            out.rate[idx] = acc + far[idx];
        }
    }
    out.max_slope_seen = max_slope;
    out.slope_cap_violations = violations;
}

RhsResult muskat_rhs(const InterfaceField& field, const QuadratureSpec& spec, int threads) {
    MuskatOperator op(field.grid, spec);
    RhsResult out;
    op.apply(field, out, threads);
    return out;
}

RhsResult muskat_rhs_reference(const InterfaceField& field, const QuadratureSpec& spec) {
    MuskatOperator op(field.grid, spec);
    RhsResult out;
    op.apply_reference(field, out);
    return out;
}

std::vector<double> halflap_rhs(const InterfaceField& field) {
    if (!field.finite()) throw std::invalid_argument("halflap_rhs: non-finite field");
    Fft2D fft(field.grid);
    std::vector<double> out;
    fft.apply_half_laplacian(field.values, out);
    return out;
}

SymbolMeasurement measure_symbol(const PeriodicGrid& grid, std::array<int, 2> k, double eps,
                                 const QuadratureSpec& spec, int threads) {
    if (k[0] == 0 && k[1] == 0) throw std::invalid_argument("measure_symbol: k must be nonzero");
    if (!(eps > 0.0) || eps > 1e-3)
        throw std::invalid_argument("measure_symbol: eps must lie in (0, 1e-3]");

    const double wx = kTwoPi * k[0] / grid.period;
    const double wy = kTwoPi * k[1] / grid.period;

    InterfaceField f = make_constant_field(grid, 0.0);
    std::vector<double> mode(f.values.size());
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) {
            const double s = std::sin(wx * grid.coord(i) + wy * grid.coord(j));
            mode[static_cast<std::size_t>(i) * grid.n + j] = s;
            f.at(i, j) = eps * s;
        }

    RhsResult rhs = muskat_rhs(f, spec, threads);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < mode.size(); ++i) {
        num += rhs.rate[i] * mode[i];
        den += mode[i] * mode[i];
    }
    const double coeff = num / den;  // rhs ~ coeff * mode
    double resid2 = 0.0, proj2 = 0.0;
    for (std::size_t i = 0; i < mode.size(); ++i) {
        const double r = rhs.rate[i] - coeff * mode[i];
        resid2 += r * r;
        proj2 += coeff * mode[i] * coeff * mode[i];
    }

    SymbolMeasurement m;
    m.k = k;
    m.xi_mag = std::sqrt(wx * wx + wy * wy);
    m.rate = -coeff / eps;
    m.constant = m.rate / m.xi_mag;
    m.residual = std::sqrt(resid2 / proj2);
    if (m.residual > 0.05)
        throw std::runtime_error("measure_symbol: projection residual above 5% of the mode");
    return m;
}

}  // namespace musk
