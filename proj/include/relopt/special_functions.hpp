#pragma once

#include <stdexcept>

namespace relopt {

// Tolerance/term-budget knobs shared by the hypergeometric series.
struct series_accuracy {
    double rel_tol = 1e-12;
    long max_terms = 100000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-6))
            throw std::domain_error("series_accuracy: rel_tol must be in (0, 1e-6]");
        if (max_terms < 100)
            throw std::domain_error("series_accuracy: max_terms must be >= 100");
    }
};

// Gauss hypergeometric 2F1(a,b;c;z) for real arguments, z < 1.
// Series for small |z|, Pfaff transform for z <= -0.6, and the 1-z
// connection formula for z in (0.6, 1). Terminating cases are summed exactly.
double gauss_2f1(double a, double b, double c, double z,
                 const series_accuracy& acc = {});

// Appell hypergeometric F1(a; b1, b2; c; x, y). Double series inside
// max(|x|,|y|) <= 0.9, single-integral representation (adaptive quadrature)
// outside, where it stays stable as the arguments approach 1.
double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const series_accuracy& acc = {});

// Generalized binomial coefficient C(n, k) for real n, integer k >= 0.
// Integer n <= 60 is computed in exact integer arithmetic; a gamma pole in
// the denominator (n - k a negative integer) gives 0 by convention.
double gen_binomial(double n, long k);

// Pochhammer symbol (x)_n = Gamma(x+n)/Gamma(x), n of either sign.
double pochhammer(double x, long n);

} // namespace relopt
