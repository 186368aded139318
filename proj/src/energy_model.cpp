#include "relopt/energy_model.hpp"
#include "relopt/errors.hpp"
#include "relopt/ser_engine.hpp"

#include <cmath>

namespace relopt {

energy_breakdown energy_direct(double p_s, const energy_profile& profile,
                               const modulation& mod) {
    profile.validate();
    if (p_s < 0.0) throw std::domain_error("energy_direct: p_s must be >= 0");
    const double ton = profile.t_on(mod);
    const double on_power = (1.0 + profile.alpha(mod)) * p_s + profile.p_ctx + profile.p_crx;
    energy_breakdown e;
    e.mode = link_mode::direct;
    e.e_total_per_bit =
        (on_power * ton + 2.0 * profile.p_lo * profile.t_tr) / profile.packet_bits;
    e.e_transmit = p_s * ton;
    e.e_circuit = (profile.p_ctx + profile.p_crx) * ton;
    return e;
}

double coop_average_power(double p_s, double p_r, double ser_sr,
                          const energy_profile& profile, const modulation& mod) {
    const double one_plus_alpha = 1.0 + profile.alpha(mod);
    const double phase1 = profile.p_ctx + one_plus_alpha * p_s + 2.0 * profile.p_crx;
    const double phase2 = profile.p_ctx + one_plus_alpha * p_r + profile.p_crx;
    return phase1 + phase2 * (1.0 - ser_sr);
}

energy_breakdown energy_coop_with_ser(double p_s, double p_r, double ser_sr,
                                      const energy_profile& profile, const modulation& mod) {
    profile.validate();
    if (p_s < 0.0 || p_r < 0.0)
        throw std::domain_error("energy_coop: powers must be >= 0");
    const double ton = profile.t_on(mod);
    const double pbar = coop_average_power(p_s, p_r, ser_sr, profile, mod);
    energy_breakdown e;
    e.mode = link_mode::cooperative;
    e.e_total_per_bit = (pbar * ton + 2.0 * profile.p_lo * profile.t_tr) / profile.packet_bits;
    e.e_transmit = (p_s + p_r * (1.0 - ser_sr)) * ton;
    e.e_circuit =
        (profile.p_ctx + 2.0 * profile.p_crx + (profile.p_ctx + profile.p_crx) * (1.0 - ser_sr)) *
        ton;
    return e;
}

energy_breakdown energy_coop(double p_s, double p_r, const link_budget& budget,
                             const fading_params& fading, const energy_profile& profile,
                             const modulation& mod) {
    // S->R hop error rate: direct-transmission form on the S-R scalars
    link_budget sr_link = budget;
    sr_link.p_s = p_s;
    sr_link.p_r = p_r;
    sr_link.pl_sd = budget.pl_sr;
    fading_params sr_fading = fading;
    sr_fading.m_sd = fading.m_sr;
    sr_fading.omega_sd = fading.omega_sr;
    const double ser_sr = ser_direct_exact(sr_link, sr_fading, mod).ser;
    return energy_coop_with_ser(p_s, p_r, ser_sr, profile, mod);
}

double cooperation_gain(const energy_breakdown& dt, double ber_dt,
                        const energy_breakdown& ct, double ber_ct) {
    if (!(ber_dt < 1.0 && ber_ct < 1.0))
        throw std::domain_error("cooperation_gain: BERs must be < 1");
    return dt.e_total_per_bit * (1.0 - ber_ct) / (ct.e_total_per_bit * (1.0 - ber_dt));
}

direct_optimum min_energy_direct(double p_star, const link_budget& budget,
                                 const fading_params& fading, const energy_profile& profile,
                                 const modulation& mod) {
    profile.validate();
    fading.validate();
    if (!(p_star > 0.0 && p_star < 0.5))
        throw std::domain_error("min_energy_direct: p_star must be in (0, 0.5)");
    const double m = fading.m_sd;
    const double c = ber_direct_approx_coefficient(m, mod);
    double p_s = 0.0;
    if (p_star < c) {
        const double bracket = std::pow(c / p_star, 1.0 / m) - 1.0;
        p_s = m * budget.n0_w * budget.pl_sd / (fading.omega_sd * mod.g()) * bracket;
    }
    if (p_s > profile.p_maxt) {
        // best BER at the cap, from the same approximation
        const double a1_cap =
            profile.p_maxt * fading.omega_sd * mod.g() / (budget.pl_sd * m * budget.n0_w);
        const double best = c * std::pow(1.0 + a1_cap, -m);
        throw infeasible_error("min_energy_direct: target BER unreachable under power cap",
                               p_s, best);
    }
    direct_optimum opt;
    opt.p_s = p_s;
    opt.energy = energy_direct(p_s, profile, mod);
    return opt;
}

double direct_transmission_energy(double p_star, double pl_sd, double omega_sd, double n0_w,
                                  double m, const energy_profile& profile, double t_on) {
    if (!(t_on > 0.0)) throw std::domain_error("direct_transmission_energy: t_on must be > 0");
    // b = L/(B t_on), M = 2^b (continuous extension of the square-QAM family)
    const double b = profile.packet_bits / (profile.bandwidth_hz * t_on);
    const double root_m = std::pow(2.0, b / 2.0);
    const double order = root_m * root_m;
    const double g = 3.0 / (2.0 * (order - 1.0));
    const double f21 = gauss_2f1(0.5, 0.5 - m, 1.5, 0.5);
    const double pi = 3.14159265358979323846;
    const double coeff = (2.0 * (root_m - 1.0) *
                              std::exp(std::lgamma(m + 0.5) - std::lgamma(m + 1.0)) /
                              (std::sqrt(pi) * order) +
                          2.0 * std::sqrt(2.0) * std::pow(1.0 - 1.0 / root_m, 2.0) * f21 / pi) /
                         b;
    const double bracket = std::pow(coeff / p_star, 1.0 / m) - 1.0;
    return n0_w * m * pl_sd / (omega_sd * g) * bracket * t_on / profile.packet_bits;
}

double direct_circuit_energy(const energy_profile& profile, double t_on) {
    if (!(t_on > 0.0)) throw std::domain_error("direct_circuit_energy: t_on must be > 0");
    return (profile.p_ctx + profile.p_crx) * t_on;
}

} // namespace relopt
