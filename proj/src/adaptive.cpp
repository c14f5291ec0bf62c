#include "musklab/adaptive.hpp"

#include <cmath>
#include <stdexcept>

namespace musk {

namespace {

void simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth,
                     QuadResult& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evals += 2;
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        out.value += left + right + delta / 15.0;
        out.error += std::fabs(delta) / 15.0;
        out.converged = out.converged && (std::fabs(delta) / 15.0 <= tol);
        return;
    }
    if (std::fabs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.error += std::fabs(delta) / 15.0;
        return;
    }
    simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double tol, int max_depth) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    QuadResult out;
    if (a == b) return out;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    out.evals += 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth, out);
    return out;
}

QuadResult adaptive_simpson_panels(const std::function<double(double)>& f,
                                   const std::vector<double>& breakpoints, double tol,
                                   int max_depth) {
    if (breakpoints.size() < 2) throw std::invalid_argument("need at least one panel");
    const double total = breakpoints.back() - breakpoints.front();
    QuadResult out;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) continue;
        const double share = std::fmax((b - a) / total, 1e-3);
        out += adaptive_simpson(f, a, b, tol * share, max_depth);
    }
    return out;
}

}  // namespace musk
