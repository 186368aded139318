#pragma once

#include "relopt/special_functions.hpp"

#include <stdexcept>

namespace relopt {

// Integration limits in radians, restricted to [0, pi]. All integrands here
// are functions of sin^2(theta), so values on (pi/2, pi] are obtained by
// folding about pi/2.
struct integral_bounds {
    double lower = 0.0;
    double upper = 0.0;

    integral_bounds() = default;
    integral_bounds(double lo, double up) : lower(lo), upper(up) {
        if (!(0.0 <= lo && lo < up && up <= 3.14159265358979323846 + 1e-12))
            throw std::domain_error("integral_bounds: need 0 <= lower < upper <= pi");
    }
};

// int (1 + a/sin^2)^(-m) dtheta. Closed form via the Appell F1 antiderivative.
double integral_I(double a, double m, const integral_bounds& bounds,
                  const series_accuracy& acc = {});

// int (1 + a/sin^2 + b/sin^4)^(-m) dtheta; requires 2m - 1/2 integer and
// a^2 >= 4b (real roots). Falls back to quadrature internally for argument
// regimes where the alternating F1 sum cancels catastrophically.
double integral_J(double a, double b, double m, const integral_bounds& bounds,
                  const series_accuracy& acc = {});

// int (1 + a/sin^2)^(-m) (1 + b/sin^2)^(-n) dtheta; requires m + n - 1/2 integer.
double integral_K(double a, double b, double m, double n, const integral_bounds& bounds,
                  const series_accuracy& acc = {});

// int sin^(2m) dtheta for m >= 0.
double integral_sin_power(double m, const integral_bounds& bounds,
                          const series_accuracy& acc = {});

// Independent verification path: adaptive Gauss-Kronrod on the defining
// integrand written in its endpoint-safe sin-power form.
enum class integrand_id { I, J, K, sin_power };

struct integrand_params {
    double a = 0.0;
    double b = 0.0;
    double m = 0.0;
    double n = 0.0;
};

double quadrature_oracle(integrand_id id, const integrand_params& p,
                         const integral_bounds& bounds, double tol = 1e-12);

// True when the half-odd shape condition behind the closed forms holds
// (the exponent sum minus 1/2 lands on a natural number).
bool closed_form_condition(double shape_sum_minus_half);

} // namespace relopt
