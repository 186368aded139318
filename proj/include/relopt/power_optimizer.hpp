#pragma once

#include "relopt/energy_model.hpp"
#include "relopt/link_model.hpp"
#include "relopt/modulation.hpp"

#include <vector>

namespace relopt {

// Cooperative energy-minimization instance: minimize energy per bit subject
// to BER(P_S, P_R) = p_star and P_S + P_R <= p_maxt.
struct opa_problem {
    double p_star = 1e-2;
    double p_maxt = 1.0;
    geometry geo;
    fading_params fading;
    energy_profile profile;
    modulation mod = make_qam(4);
    double n0_w = 1.0;

    void validate() const {
        if (!(p_star > 0.0 && p_star < 0.5))
            throw std::domain_error("opa_problem: p_star must be in (0, 0.5)");
        if (!(p_maxt > 0.0)) throw std::domain_error("opa_problem: p_maxt must be > 0");
        geo.validate();
        fading.validate();
        profile.validate();
        if (!(n0_w > 0.0)) throw std::domain_error("opa_problem: n0 must be > 0");
    }

    link_budget budget(double p_s, double p_r) const {
        return make_budget(geo, n0_w, p_s, p_r);
    }
};

struct opa_result {
    double p_s_opt = 0.0;
    double p_r_opt = 0.0;
    double achieved_ber = 0.0;
    double energy_per_bit = 0.0;
    double kkt_residual = 0.0;
    bool active_power_cap = false;
    bool feasible = false;
};

// End-to-end cooperative BER at the given powers (exact closed form / b).
double coop_ber(const opa_problem& problem, double p_s, double p_r);

// Split parameterization theta = P_S/(P_S+P_R): total power meeting the BER
// target at this split, or a negative value if unreachable under the cap.
double total_power_for_target(const opa_problem& problem, double theta);

opa_result solve_opa(const opa_problem& problem);

// First-order optimality residual at a feasible candidate (finite-difference
// multiplier recovery); throws domain_error when the candidate is off the
// BER contour by more than ~1e-6 relative.
double kkt_check(double p_s, double p_r, const opa_problem& problem);

struct convexity_report {
    double max_abs_d2_pr2 = 0.0;   // |d2 Pbar / dPr^2|, analytically zero
    double min_d2_ps2 = 0.0;       // min over grid of d2 Pbar / dPs^2
    double min_ordering_margin = 0.0; // min of d2/dPs^2 - d2/dPsdPr
    int grid_points = 0;
};

convexity_report convexity_probe(const opa_problem& problem, int grid_n);

struct sweep_row {
    double d_m = 0.0;
    double rho = 0.0;
    bool dt_feasible = false;
    double dt_p_s = 0.0;
    double dt_energy = 0.0; // J/bit
    double dt_ber = 0.0;
    bool ct_feasible = false;
    double ct_p_s = 0.0;
    double ct_p_r = 0.0;
    double ct_energy = 0.0; // J/bit
    double ct_ber = 0.0;
    double cg = 0.0; // cooperation gain, valid when both modes feasible
};

struct sweep_summary {
    double rho = 0.0;
    double crossover_m = -1.0;     // first distance where CT beats DT
    double dt_max_reach_m = -1.0;  // last DT-feasible distance
    double ct_max_reach_m = -1.0;  // last CT-feasible distance
};

struct sweep_table {
    std::vector<sweep_row> rows;
    std::vector<sweep_summary> summaries;
};

// DT minimum energy and CT OPA energy across a distance grid, per rho.
sweep_table sweep_distance(const opa_problem& tmpl, const std::vector<double>& d_m_grid,
                           double f, const std::vector<double>& rho_list);

// Fractional energy saving of CT over DT at distance d (interpolated from rows).
double savings_at(const sweep_table& table, double rho, double d_m);

} // namespace relopt
