#include "relopt/link_model.hpp"

#include <cmath>

namespace relopt {

path_loss_value path_loss(double d_km) {
    if (!(d_km > 0.0)) throw std::domain_error("path_loss: distance must be > 0");
    path_loss_value v;
    v.db = 148.0 + 40.0 * std::log10(d_km);
    v.linear = std::pow(10.0, v.db / 10.0);
    return v;
}

double noise_power(double n0_dbm_per_hz, double bandwidth_hz, double noise_figure_db) {
    if (!(bandwidth_hz > 0.0)) throw std::domain_error("noise_power: bandwidth must be > 0");
    // dBm/Hz -> W/Hz, then times bandwidth
    const double w_per_hz = std::pow(10.0, (n0_dbm_per_hz + noise_figure_db) / 10.0 - 3.0);
    return w_per_hz * bandwidth_hz;
}

link_budget make_budget(const geometry& geo, double n0_w, double p_s, double p_r) {
    geo.validate();
    link_budget b;
    b.pl_sd = path_loss(geo.d_sd_km).linear;
    b.pl_sr = path_loss(geo.d_sr_km()).linear;
    b.pl_rd = path_loss(geo.d_rd_km()).linear;
    b.n0_w = n0_w;
    b.p_s = p_s;
    b.p_r = p_r;
    b.validate();
    return b;
}

snr_scalars_t snr_scalars(const link_budget& budget, const fading_params& fading,
                          const modulation& mod) {
    budget.validate();
    fading.validate();
    const double g = mod.g();
    snr_scalars_t s;
    s.a = budget.p_s * fading.omega_sd * g / (budget.pl_sd * fading.m_sd * budget.n0_w);
    s.b = budget.p_s * fading.omega_sr * g / (budget.pl_sr * fading.m_sr * budget.n0_w);
    s.c = budget.p_r * fading.omega_rd * g / (budget.pl_rd * fading.m_rd * budget.n0_w);
    s.d = (1.0 - fading.rho) * s.c;
    return s;
}

double mgf_combined(double s, const link_budget& budget, const fading_params& fading) {
    budget.validate();
    fading.validate();
    if (!(s < 0.0)) throw std::domain_error("mgf_combined: s must be < 0");
    if (!fading.common_shape())
        throw std::domain_error("mgf_combined: requires m_sd == m_rd");
    const double m = fading.m_sd;
    const double gsd = budget.p_s * fading.omega_sd / budget.n0_w / budget.pl_sd;
    const double grd = budget.p_r * fading.omega_rd / budget.n0_w / budget.pl_rd;
    const double base =
        1.0 - (gsd + grd) * s / m + (1.0 - fading.rho) * gsd * grd * s * s / (m * m);
    return std::pow(base, -m);
}

} // namespace relopt
