#pragma once

#include "relopt/modulation.hpp"

#include <stdexcept>

namespace relopt {

// Per-link Nakagami shapes, mean channel powers and the S-D/R-D power
// correlation. The correlated closed forms additionally need m_sd == m_rd.
struct fading_params {
    double m_sd = 1.25;
    double m_sr = 1.25;
    double m_rd = 1.25;
    double omega_sd = 1.0;
    double omega_sr = 1.0;
    double omega_rd = 1.0;
    double rho = 0.0;

    void validate() const {
        if (!(m_sd >= 0.5 && m_sr >= 0.5 && m_rd >= 0.5))
            throw std::domain_error("fading_params: all m must be >= 1/2");
        if (!(omega_sd > 0.0 && omega_sr > 0.0 && omega_rd > 0.0))
            throw std::domain_error("fading_params: all omega must be > 0");
        if (!(rho >= 0.0 && rho < 1.0))
            throw std::domain_error("fading_params: rho must be in [0, 1)");
    }
    bool common_shape() const { return m_sd == m_rd; }
};

// Collinear S -- R -- D layout: d_sr = f * d_sd, d_rd = (1-f) * d_sd.
struct geometry {
    double d_sd_km = 0.6;
    double f = 0.5;

    void validate() const {
        if (!(d_sd_km > 0.0)) throw std::domain_error("geometry: d_sd must be > 0");
        if (!(f > 0.0 && f < 1.0)) throw std::domain_error("geometry: f must be in (0, 1)");
    }
    double d_sr_km() const { return f * d_sd_km; }
    double d_rd_km() const { return (1.0 - f) * d_sd_km; }
};

struct path_loss_value {
    double db = 0.0;
    double linear = 1.0;
};

// PL[dB] = 148 + 40 log10(d[km])
path_loss_value path_loss(double d_km);

// Receiver-referred noise power in W over the given bandwidth; the noise
// figure is folded into the density (standard receiver convention).
double noise_power(double n0_dbm_per_hz, double bandwidth_hz, double noise_figure_db);

// Linear path losses, noise power and the two transmit powers.
struct link_budget {
    double pl_sd = 1.0;
    double pl_sr = 1.0;
    double pl_rd = 1.0;
    double n0_w = 1.0;
    double p_s = 0.0;
    double p_r = 0.0;

    void validate() const {
        if (!(pl_sd >= 1.0 && pl_sr >= 1.0 && pl_rd >= 1.0))
            throw std::domain_error("link_budget: path losses must be >= 1 (linear)");
        if (!(n0_w > 0.0)) throw std::domain_error("link_budget: n0 must be > 0");
        if (p_s < 0.0 || p_r < 0.0)
            throw std::domain_error("link_budget: powers must be >= 0");
    }
};

link_budget make_budget(const geometry& geo, double n0_w, double p_s, double p_r);

// Dimensionless per-link SNR groupings entering every closed form:
//   a = P_S Omega_sd g / (PL_sd m_sd N0)   (S-D)
//   b = P_S Omega_sr g / (PL_sr m_sr N0)   (S-R)
//   c = P_R Omega_rd g / (PL_rd m_rd N0)   (R-D)
//   d = (1 - rho) c
struct snr_scalars_t {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

snr_scalars_t snr_scalars(const link_budget& budget, const fading_params& fading,
                          const modulation& mod);

// Joint MGF of the MRC-combined S-D / R-D power pair, s < 0.
double mgf_combined(double s, const link_budget& budget, const fading_params& fading);

} // namespace relopt
