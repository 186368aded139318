#pragma once

#include <functional>

namespace relopt {

struct quad_result {
    double value = 0.0;
    double abs_error = 0.0; // accumulated error estimate
    int intervals = 0;      // subintervals accepted
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Splits the worst interval until
// both tolerances are met or the interval cap is reached.
quad_result integrate_gk(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-12, double abs_tol = 1e-14,
                         int max_intervals = 4000);

// Same, but throws accuracy_error (carrying the estimate) on non-convergence.
double integrate_gk_checked(const std::function<double(double)>& f, double a, double b,
                            double rel_tol = 1e-12, double abs_tol = 1e-14,
                            int max_intervals = 4000);

} // namespace relopt
