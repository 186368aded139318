#pragma once

#include "relopt/link_model.hpp"
#include "relopt/modulation.hpp"
#include "relopt/special_functions.hpp"

namespace relopt {

// Transceiver power/timing profile; defaults follow the reference system
// parameters (circuit powers in W, times in s).
struct energy_profile {
    double p_ctx = 0.1;     // transmitter circuit power
    double p_crx = 0.15;    // receiver circuit power
    double p_lo = 0.05;     // frequency synthesizer
    double eta = 0.35;      // amplifier drain efficiency
    double t_tr = 5e-6;     // transient (start-up) time
    double packet_bits = 2000.0;
    double bandwidth_hz = 2e5;
    double p_maxt = 1.0;    // total transmit power cap

    void validate() const {
        if (!(p_ctx >= 0 && p_crx >= 0 && p_lo >= 0 && t_tr >= 0))
            throw std::domain_error("energy_profile: powers/times must be >= 0");
        if (!(eta > 0.0 && eta <= 1.0))
            throw std::domain_error("energy_profile: eta must be in (0, 1]");
        if (!(packet_bits > 0 && bandwidth_hz > 0 && p_maxt > 0))
            throw std::domain_error("energy_profile: L, B, p_maxt must be > 0");
    }

    // amplifier overhead alpha = papr/eta - 1
    double alpha(const modulation& mod) const { return mod.papr() / eta - 1.0; }
    // active transmission time per phase, T_on = L / (b B)
    double t_on(const modulation& mod) const {
        return packet_bits / (mod.bits() * bandwidth_hz);
    }
};

enum class link_mode { direct, cooperative };

struct energy_breakdown {
    double e_total_per_bit = 0.0; // J/bit
    double e_transmit = 0.0;      // J, radiated P_S T_on (plus relay share in CT)
    double e_circuit = 0.0;       // J, circuit blocks over T_on
    link_mode mode = link_mode::direct;
};

// Direct mode: ((1+alpha)P_S + P_CTx + P_CRx) T_on + 2 P_LO T_tr, per bit.
energy_breakdown energy_direct(double p_s, const energy_profile& profile,
                               const modulation& mod);

// Average total power drawn in cooperative mode; phase II weighted by the
// probability the relay decoded correctly.
double coop_average_power(double p_s, double p_r, double ser_sr,
                          const energy_profile& profile, const modulation& mod);

// Cooperative mode energy per bit; SER on the S-R hop comes from the exact
// closed form.
energy_breakdown energy_coop(double p_s, double p_r, const link_budget& budget,
                             const fading_params& fading, const energy_profile& profile,
                             const modulation& mod);
energy_breakdown energy_coop_with_ser(double p_s, double p_r, double ser_sr,
                                      const energy_profile& profile, const modulation& mod);

// Energy-efficiency ratio of cooperative over direct transmission per
// successfully delivered bit.
double cooperation_gain(const energy_breakdown& dt, double ber_dt,
                        const energy_breakdown& ct, double ber_ct);

struct direct_optimum {
    energy_breakdown energy;
    double p_s = 0.0;
};

// Closed-form minimum direct-mode energy meeting target BER p_star; throws
// infeasible_error (carrying the required power) if it exceeds the cap.
direct_optimum min_energy_direct(double p_star, const link_budget& budget,
                                 const fading_params& fading, const energy_profile& profile,
                                 const modulation& mod);

// Transmission / circuit energy as functions of the active time t_on
// (constellation size eliminated through b = L/(B t_on)).
double direct_transmission_energy(double p_star, double pl_sd, double omega_sd, double n0_w,
                                  double m, const energy_profile& profile, double t_on);
double direct_circuit_energy(const energy_profile& profile, double t_on);

} // namespace relopt
