#pragma once

#include "relopt/link_model.hpp"
#include "relopt/modulation.hpp"
#include "relopt/special_functions.hpp"

namespace relopt {

enum class ser_method { exact_closed_form, asymptotic, quadrature, monte_carlo };

struct ser_result {
    double ser = 0.0;
    double ber = 0.0; // ser / log2(M), Gray-mapping convention
    ser_method method = ser_method::exact_closed_form;
    bool clamped = false; // asymptote exceeded 1 and was clamped
};

// Direct S->D transmission, exact (Appell/Gauss closed form).
ser_result ser_direct_exact(const link_budget& budget, const fading_params& fading,
                            const modulation& mod, const series_accuracy& acc = {});

// Dual-hop DF with spatially correlated S-D / R-D branches, exact.
// Needs m_sd == m_rd; uses the closed form when 2*m_c - 1/2 is a natural
// number, otherwise falls back to quadrature (method tag reports which).
ser_result ser_coop_exact(const link_budget& budget, const fading_params& fading,
                          const modulation& mod, const series_accuracy& acc = {});

// Alternative closed form for rho = 0 permitting m_sd != m_rd
// (requires m_sd + m_rd - 1/2 natural; quadrature fallback otherwise).
ser_result ser_coop_uncorrelated(const link_budget& budget, const fading_params& fading,
                                 const modulation& mod, const series_accuracy& acc = {});

// Two-term high-SNR asymptote; clamped to 1 (flagged) when it diverges.
ser_result ser_coop_asymptotic(const link_budget& budget, const fading_params& fading,
                               const modulation& mod, const series_accuracy& acc = {});

// Invert the asymptotic SER for the spatial correlation coefficient.
// Throws infeasible_error when the target lies outside the achievable band.
double rho_from_targets(double ser_target, const link_budget& budget,
                        const fading_params& fading, const modulation& mod,
                        const series_accuracy& acc = {});

// Closed-form BER approximation for direct M-QAM (moderate-to-large SNR).
double ber_direct_approx(const link_budget& budget, const fading_params& fading,
                         const modulation& mod, const series_accuracy& acc = {});

// Coefficient C with BER ~= C (1 + a1)^(-m); the inverse of the line above,
// used by the direct-mode energy minimum.
double ber_direct_approx_coefficient(double m, const modulation& mod,
                                     const series_accuracy& acc = {});

// Independent ground-truth path: same compositions evaluated by adaptive
// quadrature of the defining integral transforms.
ser_result ser_direct_quadrature(const link_budget& budget, const fading_params& fading,
                                 const modulation& mod, double tol = 1e-12);
ser_result ser_coop_quadrature(const link_budget& budget, const fading_params& fading,
                               const modulation& mod, double tol = 1e-12);

} // namespace relopt
