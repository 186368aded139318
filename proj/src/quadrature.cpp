#include "relopt/quadrature.hpp"
#include "relopt/errors.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace relopt {
namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule (QUADPACK dqk15).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct interval {
    double a, b, value, err;
    bool operator<(const interval& o) const { return err < o.err; }
};

interval eval_gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double k15 = wgk[7] * fc;
    double g7 = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double fs = f(mid - dx) + f(mid + dx);
        k15 += wgk[i] * fs;
        if (i % 2 == 1) g7 += wg[i / 2] * fs;
    }
    k15 *= half;
    g7 *= half;
    double err = std::fabs(k15 - g7);
    // sharpened estimate as in QUADPACK
    if (err > 1e-300) err = std::pow(200.0 * err, 1.5);
    if (err > std::fabs(k15 - g7)) err = std::fabs(k15 - g7);
    return {a, b, k15, std::max(err, 1e-18 * std::fabs(k15))};
}

} // namespace

quad_result integrate_gk(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, double abs_tol, int max_intervals) {
    quad_result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<interval> heap;
    interval whole = eval_gk15(f, a, b);
    double total = whole.value;
    double total_err = whole.err;
    heap.push(whole);
    int n = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) && n < max_intervals) {
        interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval exhausted in double precision
            heap.push(worst);
            break;
        }
        interval left = eval_gk15(f, worst.a, mid);
        interval right = eval_gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    out.value = total;
    out.abs_error = total_err;
    out.intervals = n;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::fabs(total));
    return out;
}

double integrate_gk_checked(const std::function<double(double)>& f, double a, double b,
                            double rel_tol, double abs_tol, int max_intervals) {
    quad_result r = integrate_gk(f, a, b, rel_tol, abs_tol, max_intervals);
    if (!r.converged)
        throw accuracy_error("adaptive quadrature did not reach tolerance", r.value, r.intervals);
    return r.value;
}

} // namespace relopt
