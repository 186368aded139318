#include "relopt/special_functions.hpp"
#include "relopt/errors.hpp"
#include "relopt/quadrature.hpp"

#include <cmath>
#include <limits>

namespace relopt {
namespace {

bool near_nonpositive_integer(double v, double* which = nullptr) {
    const double r = std::round(v);
    if (r > 0.5) return false;
    if (std::fabs(v - r) < 1e-12) {
        if (which) *which = r;
        return true;
    }
    return false;
}

bool near_integer(double v) { return std::fabs(v - std::round(v)) < 1e-9; }

// Plain power series sum of 2F1; valid (and used) for |z| well inside 1,
// and for terminating parameter cases at any z.
double series_2f1(double a, double b, double c, double z, const series_accuracy& acc) {
    double term = 1.0, sum = 1.0;
    // the term ratio tends to z, so a tail after a small term is bounded by
    // |term| z/(1-z); fold that into the stopping threshold
    const double tail_guard = std::max(1.0 - std::fabs(z), 1e-3);
    int small_streak = 0;
    for (long k = 0; k < acc.max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
        sum += term;
        if (std::fabs(term) <= acc.rel_tol * tail_guard * std::fabs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
        if (term == 0.0) return sum;
    }
    throw accuracy_error("2F1 series did not converge", sum, acc.max_terms);
}

double gauss_sum_at_one(double a, double b, double c) {
    // 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), c-a-b > 0
    const double s = c - a - b;
    if (s <= 0.0) throw std::domain_error("2F1 at z=1 diverges (c-a-b <= 0)");
    return std::exp(std::lgamma(c) + std::lgamma(s) - std::lgamma(c - a) - std::lgamma(c - b));
}

} // namespace

double gauss_2f1(double a, double b, double c, double z, const series_accuracy& acc) {
    acc.validate();
    double neg;
    if (near_nonpositive_integer(c, &neg) &&
        !(near_nonpositive_integer(a, &neg) || near_nonpositive_integer(b, &neg)))
        throw std::domain_error("gauss_2f1: c is a non-positive integer");
    if (z >= 1.0) {
        if (z == 1.0) return gauss_sum_at_one(a, b, c);
        throw std::domain_error("gauss_2f1: z > 1 not supported");
    }

    // Terminating series: a or b a non-positive integer.
    double r;
    if (near_nonpositive_integer(a, &r) || near_nonpositive_integer(b, &r))
        return series_2f1(a, b, c, z, acc);

    if (z <= -0.6) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
        return std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, z / (z - 1.0), acc);
    }
    if (z > 0.6) {
        // connection formula via 1-z; needs c-a-b non-integer
        const double s = c - a - b;
        if (near_integer(s))
            throw std::domain_error("gauss_2f1: z near 1 with integer c-a-b unsupported");
        const double t1 = std::exp(std::lgamma(c) + std::lgamma(s) - std::lgamma(c - a) -
                                   std::lgamma(c - b)) *
                          series_2f1(a, b, 1.0 - s, 1.0 - z, acc);
        // Gamma(-s) via tgamma handles negative non-integer arguments
        const double g_ab = std::tgamma(a) * std::tgamma(b);
        const double t2 = std::pow(1.0 - z, s) * std::tgamma(c) * std::tgamma(-s) / g_ab *
                          series_2f1(c - a, c - b, 1.0 + s, 1.0 - z, acc);
        return t1 + t2;
    }
    return series_2f1(a, b, c, z, acc);
}

double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const series_accuracy& acc) {
    acc.validate();
    // reduction identities to 2F1
    if (y == 0.0) return gauss_2f1(a, b1, c, x, acc);
    if (x == 0.0) return gauss_2f1(a, b2, c, y, acc);
    if (x == y) return gauss_2f1(a, b1 + b2, c, x, acc);
    if (x == 1.0) {
        // F1(a;b1,b2;c;1,y) = [Gamma(c)Gamma(c-a-b1)/(Gamma(c-a)Gamma(c-b1))] 2F1(a,b2;c-b1;y)
        const double s = c - a - b1;
        if (s <= 0.0) throw std::domain_error("appell_f1 diverges at x=1 (c-a-b1 <= 0)");
        return std::exp(std::lgamma(c) + std::lgamma(s) - std::lgamma(c - a) -
                        std::lgamma(c - b1)) *
               gauss_2f1(a, b2, c - b1, y, acc);
    }
    if (y == 1.0) return appell_f1(a, b2, b1, c, 1.0, x, acc);

    if (std::max(std::fabs(x), std::fabs(y)) > 0.9) {
        // Euler-type integral; stable near the convergence boundary.
        // Requires c > a > 0 (holds at every closed-form call site, where c = a+1).
        if (!(c > a && a > 0.0))
            throw std::domain_error("appell_f1 integral representation needs c > a > 0");
        const double ca = c - a;
        const double log_beta = std::lgamma(a) + std::lgamma(ca) - std::lgamma(c);
        // substitute t = s^2 to remove the t^(a-1) endpoint singularity at 0
        auto integrand = [&](double s) {
            const double t = s * s;
            double v = 2.0 * std::pow(s, 2.0 * a - 1.0) * std::pow(1.0 - x * t, -b1) *
                       std::pow(1.0 - y * t, -b2);
            if (std::fabs(ca - 1.0) > 1e-12) v *= std::pow(1.0 - t, ca - 1.0);
            return v;
        };
        quad_result q = integrate_gk(integrand, 0.0, 1.0, acc.rel_tol, 1e-300, 8000);
        if (!q.converged)
            throw accuracy_error("appell_f1 integral representation did not converge",
                                 q.value / std::exp(log_beta), q.intervals);
        return q.value / std::exp(log_beta);
    }

    // Double series, summed row-wise in j (powers of x); each row is a
    // 2F1-type series in y. Terminates in j when b1 is a non-positive integer.
    // Row sums decay like x^j and in-row terms like y^k; the stopping
    // thresholds carry the corresponding geometric tail factors.
    const double row_guard = std::max(1.0 - std::fabs(x), 1e-3);
    const double col_guard = std::max(1.0 - std::fabs(y), 1e-3);
    double jterm0 = 1.0; // (a)_j (b1)_j x^j / ((c)_j j!)
    double sum = 0.0;
    long terms = 0;
    int quiet_rows = 0;
    for (long j = 0;; ++j) {
        double row = 0.0;
        double t = jterm0; // (a)_{j+k} (b1)_j (b2)_k x^j y^k / ((c)_{j+k} j! k!)
        int small_streak = 0;
        for (long k = 0;; ++k) {
            row += t;
            if (std::fabs(t) <= acc.rel_tol * col_guard * (std::fabs(sum + row) + 1e-300)) {
                if (++small_streak >= 3) break;
            } else {
                small_streak = 0;
            }
            t *= (a + j + k) * (b2 + k) / ((c + j + k) * (k + 1)) * y;
            if (++terms > acc.max_terms)
                throw accuracy_error("appell_f1 double series did not converge", sum + row, terms);
        }
        sum += row;
        if (std::fabs(row) <= acc.rel_tol * row_guard * std::fabs(sum)) {
            if (++quiet_rows >= 3) return sum;
        } else {
            quiet_rows = 0;
        }
        jterm0 *= (a + j) * (b1 + j) / ((c + j) * (j + 1)) * x;
        if (jterm0 == 0.0) return sum; // b1 terminated the x-direction
        if (++terms > acc.max_terms)
            throw accuracy_error("appell_f1 double series did not converge", sum, terms);
    }
}

double gen_binomial(double n, long k) {
    if (k < 0) throw std::domain_error("gen_binomial: k must be >= 0");
    if (k == 0) return 1.0;
    const bool n_int = near_integer(n);
    // gamma pole in the denominator: n-k a negative integer while n is not
    if (!n_int || n >= 0) {
        const double nk = n - k;
        if (!n_int && near_integer(nk) && nk < -0.5) return 0.0;
    }
    if (n_int && n >= 0.0 && n <= 60.0) {
        const long ni = static_cast<long>(std::llround(n));
        if (k > ni) return 0.0;
        const long kk = std::min(k, ni - k);
        unsigned long long num = 1;
        for (long i = 0; i < kk; ++i) num = num * (ni - i) / (i + 1); // stays exact: C(n,i+1) integral
        return static_cast<double>(num);
    }
    // product form n(n-1)...(n-k+1)/k!, exact sign handling for any real n
    double v = 1.0;
    for (long i = 0; i < k; ++i) v *= (n - i) / (i + 1);
    return v;
}

double pochhammer(double x, long n) {
    if (n == 0) return 1.0;
    if (n > 0) {
        double v = 1.0;
        for (long i = 0; i < n; ++i) v *= x + i;
        return v;
    }
    double denom = 1.0;
    for (long i = 1; i <= -n; ++i) denom *= x - i;
    if (denom == 0.0) throw std::domain_error("pochhammer: undefined ratio (gamma pole)");
    return 1.0 / denom;
}

} // namespace relopt
