#include "relopt/ser_engine.hpp"
#include "relopt/analytic_integrals.hpp"
#include "relopt/errors.hpp"
#include "relopt/quadrature.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace relopt {
namespace {

constexpr double pi = std::numbers::pi;

// Weighted transform of a definite-integral evaluator over theta.
//   QAM: (4/pi) C Int_0^{pi/2} - (4/pi) C^2 Int_0^{pi/4},  C = 1 - 1/sqrt(M)
//   PSK: (1/pi) Int_0^{(M-1)pi/M}
double f_transform(const modulation& mod,
                   const std::function<double(const integral_bounds&)>& eval) {
    if (mod.family == mod_family::qam) {
        const double c = 1.0 - 1.0 / std::sqrt(double(mod.order));
        const double i_half = eval(integral_bounds(0.0, pi / 2.0));
        const double i_quarter = eval(integral_bounds(0.0, pi / 4.0));
        return (4.0 / pi) * c * i_half - (4.0 / pi) * c * c * i_quarter;
    }
    const double upper = (mod.order - 1.0) * pi / mod.order;
    return eval(integral_bounds(0.0, upper)) / pi;
}

double f_transform_of_one(const modulation& mod) {
    // kernel identically 1 (zero SNR): max SER of the constellation
    if (mod.family == mod_family::qam) return 1.0 - 1.0 / mod.order;
    return (mod.order - 1.0) / mod.order;
}

double f_of_I(const modulation& mod, double x, double m, const series_accuracy& acc) {
    if (x <= 0.0) return f_transform_of_one(mod);
    return f_transform(mod, [&](const integral_bounds& b) { return integral_I(x, m, b, acc); });
}

double f_of_I_quad(const modulation& mod, double x, double m, double tol) {
    if (x <= 0.0) return f_transform_of_one(mod);
    return f_transform(mod, [&](const integral_bounds& b) {
        return quadrature_oracle(integrand_id::I, {x, 0.0, m, 0.0}, b, tol);
    });
}

double f_of_J_quad(const modulation& mod, double A, double B, double m, double tol) {
    if (A <= 0.0 && B <= 0.0) return f_transform_of_one(mod);
    if (B <= 0.0) return f_of_I_quad(mod, A, m, tol);
    return f_transform(mod, [&](const integral_bounds& b) {
        return quadrature_oracle(integrand_id::J, {A, B, m, 0.0}, b, tol);
    });
}

double f_of_sin_power(const modulation& mod, double m, const series_accuracy& acc) {
    return f_transform(mod,
                       [&](const integral_bounds& b) { return integral_sin_power(m, b, acc); });
}

ser_result finish(double ser, int bits, ser_method method, bool clamped = false) {
    ser_result r;
    r.clamped = clamped;
    if (ser > 1.0) {
        r.clamped = true;
        ser = 1.0;
    }
    r.ser = std::max(ser, 0.0);
    r.ber = r.ser / bits;
    r.method = method;
    return r;
}

struct asym_coeffs {
    double a_c, a_2c, a_sr;
};

asym_coeffs asymptotic_coefficients(const fading_params& fading, const modulation& mod,
                                    const series_accuracy& acc) {
    asym_coeffs k;
    k.a_c = f_of_sin_power(mod, fading.m_sd, acc);
    k.a_2c = f_of_sin_power(mod, 2.0 * fading.m_sd, acc);
    k.a_sr = f_of_sin_power(mod, fading.m_sr, acc);
    return k;
}

} // namespace

ser_result ser_direct_exact(const link_budget& budget, const fading_params& fading,
                            const modulation& mod, const series_accuracy& acc) {
    fading.validate();
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    return finish(f_of_I(mod, s.a, fading.m_sd, acc), mod.bits(), ser_method::exact_closed_form);
}

ser_result ser_direct_quadrature(const link_budget& budget, const fading_params& fading,
                                 const modulation& mod, double tol) {
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    return finish(f_of_I_quad(mod, s.a, fading.m_sd, tol), mod.bits(), ser_method::quadrature);
}

ser_result ser_coop_exact(const link_budget& budget, const fading_params& fading,
                          const modulation& mod, const series_accuracy& acc) {
    fading.validate();
    if (!fading.common_shape())
        throw std::domain_error("ser_coop_exact: requires m_sd == m_rd (common shape m_c)");
    const double m_c = fading.m_sd;
    const snr_scalars_t s = snr_scalars(budget, fading, mod);

    const double s_dt = f_of_I(mod, s.a, m_c, acc);
    const double s_sr = f_of_I(mod, s.b, fading.m_sr, acc);

    const double A = s.a + s.c;
    const double B = s.a * s.d;

    double t3;
    ser_method method = ser_method::exact_closed_form;
    if (B <= 1e-300) {
        // a relay or source branch vanished; the combined kernel degenerates
        t3 = f_of_I(mod, A, m_c, acc);
    } else if (closed_form_condition(2.0 * m_c - 0.5)) {
        t3 = f_transform(mod,
                         [&](const integral_bounds& b) { return integral_J(A, B, m_c, b, acc); });
    } else {
        t3 = f_of_J_quad(mod, A, B, m_c, 1e-12);
        method = ser_method::quadrature;
    }
    return finish(s_dt * s_sr + t3 * (1.0 - s_sr), mod.bits(), method);
}

ser_result ser_coop_quadrature(const link_budget& budget, const fading_params& fading,
                               const modulation& mod, double tol) {
    if (!fading.common_shape())
        throw std::domain_error("ser_coop_quadrature: requires m_sd == m_rd");
    const double m_c = fading.m_sd;
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    const double s_dt = f_of_I_quad(mod, s.a, m_c, tol);
    const double s_sr = f_of_I_quad(mod, s.b, fading.m_sr, tol);
    const double t3 = f_of_J_quad(mod, s.a + s.c, s.a * s.d, m_c, tol);
    return finish(s_dt * s_sr + t3 * (1.0 - s_sr), mod.bits(), ser_method::quadrature);
}

ser_result ser_coop_uncorrelated(const link_budget& budget, const fading_params& fading,
                                 const modulation& mod, const series_accuracy& acc) {
    fading.validate();
    if (fading.rho != 0.0)
        throw std::domain_error("ser_coop_uncorrelated: formulated for rho = 0");
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    const double s_dt = f_of_I(mod, s.a, fading.m_sd, acc);
    const double s_sr = f_of_I(mod, s.b, fading.m_sr, acc);

    double t3;
    ser_method method = ser_method::exact_closed_form;
    if (s.a <= 0.0 && s.c <= 0.0) {
        t3 = f_transform_of_one(mod);
    } else if (s.a <= 0.0) {
        t3 = f_of_I(mod, s.c, fading.m_rd, acc);
    } else if (s.c <= 0.0) {
        t3 = f_of_I(mod, s.a, fading.m_sd, acc);
    } else if (closed_form_condition(fading.m_sd + fading.m_rd - 0.5)) {
        t3 = f_transform(mod, [&](const integral_bounds& b) {
            return integral_K(s.a, s.c, fading.m_sd, fading.m_rd, b, acc);
        });
    } else {
        t3 = f_transform(mod, [&](const integral_bounds& b) {
            return quadrature_oracle(integrand_id::K,
                                     {s.a, s.c, fading.m_sd, fading.m_rd}, b, 1e-12);
        });
        method = ser_method::quadrature;
    }
    return finish(s_dt * s_sr + t3 * (1.0 - s_sr), mod.bits(), method);
}

ser_result ser_coop_asymptotic(const link_budget& budget, const fading_params& fading,
                               const modulation& mod, const series_accuracy& acc) {
    fading.validate();
    if (!fading.common_shape())
        throw std::domain_error("ser_coop_asymptotic: requires m_sd == m_rd");
    const double m_c = fading.m_sd;
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    const asym_coeffs k = asymptotic_coefficients(fading, mod, acc);
    if (s.a <= 0.0 || s.b <= 0.0 || s.d <= 0.0)
        return finish(1.0, mod.bits(), ser_method::asymptotic, true);
    const double term_dt =
        k.a_c * k.a_sr * std::pow(s.a, -m_c) * std::pow(s.b, -fading.m_sr);
    const double term_dual = k.a_2c * std::pow(s.a * s.d, -m_c);
    return finish(term_dt + term_dual, mod.bits(), ser_method::asymptotic);
}

double rho_from_targets(double ser_target, const link_budget& budget,
                        const fading_params& fading, const modulation& mod,
                        const series_accuracy& acc) {
    fading.validate();
    if (!fading.common_shape())
        throw std::domain_error("rho_from_targets: requires m_sd == m_rd");
    const double m_c = fading.m_sd;
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    if (!(s.a > 0.0 && s.b > 0.0 && s.c > 0.0))
        throw std::domain_error("rho_from_targets: needs positive transmit powers");
    const asym_coeffs k = asymptotic_coefficients(fading, mod, acc);
    const double term_dt =
        k.a_c * k.a_sr * std::pow(s.a, -m_c) * std::pow(s.b, -fading.m_sr);
    const double ser_rho0 = term_dt + k.a_2c * std::pow(s.a * s.c, -m_c);
    if (ser_target < ser_rho0 * (1.0 - 1e-12))
        throw infeasible_error("rho_from_targets: target below the rho=0 asymptotic SER",
                               ser_rho0, ser_target);
    const double denom = ser_target - term_dt;
    const double one_minus_rho = std::pow(k.a_2c / denom, 1.0 / m_c) / (s.a * s.c);
    double rho = 1.0 - one_minus_rho;
    if (rho < 0.0 && rho > -1e-9) rho = 0.0;
    if (!(rho >= 0.0 && rho < 1.0))
        throw infeasible_error("rho_from_targets: target outside achievable band", ser_rho0,
                               ser_target);
    return rho;
}

double ber_direct_approx_coefficient(double m, const modulation& mod,
                                     const series_accuracy& acc) {
    if (mod.family != mod_family::qam)
        throw std::domain_error("ber_direct_approx: QAM only");
    const double root_m = std::sqrt(double(mod.order));
    const double f21 = gauss_2f1(0.5, 0.5 - m, 1.5, 0.5, acc);
    const double t1 = 2.0 * (root_m - 1.0) *
                      std::exp(std::lgamma(m + 0.5) - std::lgamma(m + 1.0)) /
                      (std::sqrt(pi) * mod.order);
    const double t2 = 2.0 * std::sqrt(2.0) * std::pow(1.0 - 1.0 / root_m, 2.0) * f21 / pi;
    return (t1 + t2) / mod.bits();
}

double ber_direct_approx(const link_budget& budget, const fading_params& fading,
                         const modulation& mod, const series_accuracy& acc) {
    const snr_scalars_t s = snr_scalars(budget, fading, mod);
    const double c = ber_direct_approx_coefficient(fading.m_sd, mod, acc);
    return c * std::pow(1.0 + s.a, -fading.m_sd);
}

} // namespace relopt
