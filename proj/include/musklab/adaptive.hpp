#pragma once

#include <functional>
#include <vector>

namespace musk {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // accumulated local error estimates
    long evals = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        evals += o.evals;
        converged = converged && o.converged;
        return *this;
    }
};

// Adaptive Simpson on [a, b] with absolute tolerance tol.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double tol, int max_depth = 55);

// Integrate over the panels defined by sorted breakpoints, budgeting tol by
// panel length. Breakpoints let callers isolate integrand kinks.
QuadResult adaptive_simpson_panels(const std::function<double(double)>& f,
                                   const std::vector<double>& breakpoints, double tol,
                                   int max_depth = 55);

}  // namespace musk
