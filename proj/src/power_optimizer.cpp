#include "relopt/power_optimizer.hpp"
#include "relopt/errors.hpp"
#include "relopt/ser_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relopt {
namespace {

constexpr double power_floor = 1e-9; // W, bisection bracket low end

double coop_energy(const opa_problem& pb, double p_s, double p_r) {
    return energy_coop(p_s, p_r, pb.budget(p_s, p_r), pb.fading, pb.profile, pb.mod)
        .e_total_per_bit;
}

// Average total drawn power (the probe target; SER on S-R couples in P_S).
double coop_pbar(const opa_problem& pb, double p_s, double p_r) {
    link_budget sr = pb.budget(p_s, p_r);
    sr.pl_sd = sr.pl_sr;
    fading_params f = pb.fading;
    f.m_sd = pb.fading.m_sr;
    f.omega_sd = pb.fading.omega_sr;
    const double ser_sr = ser_direct_exact(sr, f, pb.mod).ser;
    return coop_average_power(p_s, p_r, ser_sr, pb.profile, pb.mod);
}

struct theta_solution {
    bool feasible = false;
    double p_tot = 0.0;
    double energy = std::numeric_limits<double>::infinity();
};

// BER(theta*P, (1-theta)*P) is strictly decreasing in P; guarded log-space
// secant (Illinois) for BER = p_star within [power_floor, p_maxt].
theta_solution solve_theta(const opa_problem& pb, double theta, double hint = 0.0) {
    theta_solution sol;
    auto ber_at = [&](double p) { return coop_ber(pb, theta * p, (1.0 - theta) * p); };
    double lo = power_floor, hi = pb.p_maxt;
    double f_hi = ber_at(hi) - pb.p_star;
    if (f_hi > 0.0) return sol; // target unreachable at this split
    double f_lo = ber_at(lo) - pb.p_star;
    if (f_lo <= 0.0) { // target already met at the floor
        sol.feasible = true;
        sol.p_tot = lo;
        sol.energy = coop_energy(pb, theta * lo, (1.0 - theta) * lo);
        return sol;
    }
    if (hint > lo && hint < hi) { // shrink the bracket around the previous solution
        const double a = std::max(lo, hint * 0.5), b = std::min(hi, hint * 2.0);
        const double fa = ber_at(a) - pb.p_star;
        if (fa > 0.0) {
            const double fb = ber_at(b) - pb.p_star;
            if (fb <= 0.0) {
                lo = a; f_lo = fa; hi = b; f_hi = fb;
            } else {
                lo = b; f_lo = fb;
            }
        } else {
            hi = a; f_hi = fa;
        }
    }
    // work on log(P); BER is near power-law so the secant converges fast
    double la = std::log(lo), lb = std::log(hi);
    double fa = f_lo, fb = f_hi;
    for (int it = 0; it < 200 && (lb - la) > 1e-10; ++it) {
        double cand = lb - fb * (lb - la) / (fb - fa);
        if (!(cand > la + 0.1 * (lb - la) && cand < lb - 0.001 * (lb - la)))
            cand = 0.5 * (la + lb);
        const double fc = ber_at(std::exp(cand)) - pb.p_star;
        if (fc > 0.0) {
            la = cand;
            fa = fc;
        } else {
            lb = cand;
            fb = fc;
        }
    }
    sol.feasible = true;
    sol.p_tot = std::exp(0.5 * (la + lb));
    if (ber_at(sol.p_tot) > pb.p_star) sol.p_tot = std::exp(lb); // stay on the certified side
    sol.energy = coop_energy(pb, theta * sol.p_tot, (1.0 - theta) * sol.p_tot);
    return sol;
}

} // namespace

double coop_ber(const opa_problem& problem, double p_s, double p_r) {
    return ser_coop_exact(problem.budget(p_s, p_r), problem.fading, problem.mod).ber;
}

double total_power_for_target(const opa_problem& problem, double theta) {
    theta_solution s = solve_theta(problem, theta);
    return s.feasible ? s.p_tot : -1.0;
}

opa_result solve_opa(const opa_problem& problem) {
    problem.validate();
    opa_result res;

    // coarse scan over the power split
    const int n_scan = 49;
    double best_theta = -1.0, best_energy = std::numeric_limits<double>::infinity();
    double best_ptot = 0.0;
    double hint = 0.0;
    std::vector<double> thetas(n_scan);
    for (int i = 0; i < n_scan; ++i) {
        const double theta = (i + 1) / double(n_scan + 1);
        thetas[i] = theta;
        theta_solution s = solve_theta(problem, theta, hint);
        if (!s.feasible) continue;
        hint = s.p_tot;
        if (s.energy < best_energy) {
            best_energy = s.energy;
            best_theta = theta;
            best_ptot = s.p_tot;
        }
    }

    if (best_theta < 0.0) {
        // infeasible: report the best BER achievable at the power cap
        double lo = 0.02, hi = 0.98;
        auto ber_cap = [&](double th) {
            return coop_ber(problem, th * problem.p_maxt, (1.0 - th) * problem.p_maxt);
        };
        const double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = ber_cap(x1), f2 = ber_cap(x2);
        while (hi - lo > 1e-5) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = ber_cap(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = ber_cap(x2);
            }
        }
        const double th = 0.5 * (lo + hi);
        res.feasible = false;
        res.active_power_cap = true;
        res.p_s_opt = th * problem.p_maxt;
        res.p_r_opt = (1.0 - th) * problem.p_maxt;
        res.achieved_ber = ber_cap(th);
        res.energy_per_bit = coop_energy(problem, res.p_s_opt, res.p_r_opt);
        res.kkt_residual = std::numeric_limits<double>::infinity();
        return res;
    }

    // golden-section refinement around the best scan point
    int bi = int(std::lround(best_theta * (n_scan + 1))) - 1;
    double lo = thetas[std::max(0, bi - 1)];
    double hi = thetas[std::min(n_scan - 1, bi + 1)];
    if (bi == 0) lo = 0.005;
    if (bi == n_scan - 1) hi = 0.995;
    auto energy_of = [&](double th) {
        theta_solution s = solve_theta(problem, th, best_ptot);
        return s.feasible ? s.energy : std::numeric_limits<double>::infinity();
    };
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = energy_of(x1), f2 = energy_of(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = energy_of(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = energy_of(x2);
        }
    }
    // parabolic touch-up through the final bracket
    double theta_opt = 0.5 * (lo + hi);
    {
        const double tm = theta_opt, ta = lo, tb = hi;
        const double fa = energy_of(ta), fm = energy_of(tm), fb = energy_of(tb);
        const double d1 = (tm - ta) * (fm - fb), d2 = (tm - tb) * (fm - fa);
        const double denom = 2.0 * (d1 - d2);
        if (std::fabs(denom) > 0.0) {
            const double cand = tm - ((tm - ta) * d1 - (tm - tb) * d2) / denom;
            if (cand > ta && cand < tb && energy_of(cand) <= fm) theta_opt = cand;
        }
    }

    theta_solution s = solve_theta(problem, theta_opt, best_ptot);
    res.feasible = true;
    res.p_s_opt = theta_opt * s.p_tot;
    res.p_r_opt = (1.0 - theta_opt) * s.p_tot;
    res.achieved_ber = coop_ber(problem, res.p_s_opt, res.p_r_opt);
    res.energy_per_bit = s.energy;
    res.active_power_cap = s.p_tot >= problem.p_maxt * (1.0 - 1e-9);
    res.kkt_residual = kkt_check(res.p_s_opt, res.p_r_opt, problem);
    return res;
}

double kkt_check(double p_s, double p_r, const opa_problem& problem) {
    problem.validate();
    const double ber = coop_ber(problem, p_s, p_r);
    if (std::fabs(ber - problem.p_star) > 1e-6 * problem.p_star + 1e-15)
        throw std::domain_error("kkt_check: candidate is not on the BER contour");

    auto grad = [&](auto&& fn, double x, double y) {
        const double hx = 1e-6 * std::max(x, 1e-6);
        const double hy = 1e-6 * std::max(y, 1e-6);
        const double gx = (fn(x + hx, y) - fn(x - hx, y)) / (2.0 * hx);
        const double gy = (fn(x, y + hy) - fn(x, y - hy)) / (2.0 * hy);
        return std::pair{gx, gy};
    };
    auto [e_s, e_r] = grad([&](double a, double b) { return coop_energy(problem, a, b); },
                           p_s, p_r);
    auto [b_s, b_r] = grad([&](double a, double b) { return coop_ber(problem, a, b); },
                           p_s, p_r);

    const double scale = std::fabs(e_s) + std::fabs(e_r);
    const double bscale = std::fabs(b_s) + std::fabs(b_r);
    double lambda1;
    if (std::fabs(b_r - b_s) > 1e-14 * bscale)
        lambda1 = (e_s - e_r) / (b_r - b_s);
    else
        lambda1 = -e_s / b_s;
    const double lambda4 = -(e_s + lambda1 * b_s);

    const bool cap_active = (p_s + p_r) >= problem.p_maxt * (1.0 - 1e-9);
    double residual = 0.0;
    if (!cap_active) residual += std::fabs(lambda4) / scale; // slackness: lambda4 must vanish
    residual += std::max(0.0, -lambda1 * bscale / scale);    // lambda1 >= 0
    residual += std::max(0.0, -lambda4 / scale);             // lambda4 >= 0
    return residual;
}

convexity_report convexity_probe(const opa_problem& problem, int grid_n) {
    problem.validate();
    convexity_report rep;
    rep.min_d2_ps2 = std::numeric_limits<double>::infinity();
    rep.min_ordering_margin = std::numeric_limits<double>::infinity();
    const double h = 1e-3 * problem.p_maxt;
    const double lo = 0.03 * problem.p_maxt, hi = 0.95 * problem.p_maxt;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const double ps = lo + (hi - lo) * i / std::max(1, grid_n - 1);
            const double pr = lo + (hi - lo) * j / std::max(1, grid_n - 1);
            if (ps + pr > problem.p_maxt) continue;
            auto pbar = [&](double a, double b) { return coop_pbar(problem, a, b); };
            const double f0 = pbar(ps, pr);
            const double d2_ps2 = (pbar(ps + h, pr) - 2.0 * f0 + pbar(ps - h, pr)) / (h * h);
            const double d2_pr2 = (pbar(ps, pr + h) - 2.0 * f0 + pbar(ps, pr - h)) / (h * h);
            const double d2_mixed = (pbar(ps + h, pr + h) - pbar(ps + h, pr - h) -
                                     pbar(ps - h, pr + h) + pbar(ps - h, pr - h)) /
                                    (4.0 * h * h);
            rep.max_abs_d2_pr2 = std::max(rep.max_abs_d2_pr2, std::fabs(d2_pr2));
            rep.min_d2_ps2 = std::min(rep.min_d2_ps2, d2_ps2);
            rep.min_ordering_margin = std::min(rep.min_ordering_margin, d2_ps2 - d2_mixed);
            ++rep.grid_points;
        }
    }
    return rep;
}

sweep_table sweep_distance(const opa_problem& tmpl, const std::vector<double>& d_m_grid,
                           double f, const std::vector<double>& rho_list) {
    sweep_table table;
    for (double rho : rho_list) {
        opa_problem pb = tmpl;
        pb.geo.f = f;
        pb.fading.rho = rho;
        sweep_summary sum;
        sum.rho = rho;
        double prev_dt = 0.0, prev_ct = 0.0, prev_d = 0.0;
        bool prev_both = false;
        for (double d_m : d_m_grid) {
            pb.geo.d_sd_km = d_m / 1000.0;
            sweep_row row;
            row.d_m = d_m;
            row.rho = rho;

            link_budget zero = pb.budget(0.0, 0.0);
            try {
                direct_optimum dt = min_energy_direct(pb.p_star, zero, pb.fading, pb.profile,
                                                      pb.mod);
                row.dt_feasible = true;
                row.dt_p_s = dt.p_s;
                row.dt_energy = dt.energy.e_total_per_bit;
                link_budget dtb = pb.budget(dt.p_s, 0.0);
                row.dt_ber = ser_direct_exact(dtb, pb.fading, pb.mod).ber;
                sum.dt_max_reach_m = d_m;
            } catch (const infeasible_error&) {
                row.dt_feasible = false;
            }

            opa_result ct = solve_opa(pb);
            row.ct_feasible = ct.feasible;
            row.ct_p_s = ct.p_s_opt;
            row.ct_p_r = ct.p_r_opt;
            row.ct_energy = ct.energy_per_bit;
            row.ct_ber = ct.achieved_ber;
            if (ct.feasible) sum.ct_max_reach_m = d_m;

            if (row.dt_feasible && row.ct_feasible) {
                energy_breakdown dtb;
                dtb.e_total_per_bit = row.dt_energy;
                energy_breakdown ctb;
                ctb.e_total_per_bit = row.ct_energy;
                row.cg = cooperation_gain(dtb, row.dt_ber, ctb, row.ct_ber);
                if (sum.crossover_m < 0.0 && row.ct_energy < row.dt_energy) {
                    if (prev_both && prev_ct >= prev_dt) {
                        // linear interpolation on the energy gap
                        const double g0 = prev_ct - prev_dt;
                        const double g1 = row.ct_energy - row.dt_energy;
                        sum.crossover_m = prev_d + (d_m - prev_d) * g0 / (g0 - g1);
                    } else {
                        sum.crossover_m = d_m;
                    }
                }
                prev_both = true;
                prev_dt = row.dt_energy;
                prev_ct = row.ct_energy;
                prev_d = d_m;
            } else {
                prev_both = false;
            }
            table.rows.push_back(row);
        }
        table.summaries.push_back(sum);
    }
    return table;
}

double savings_at(const sweep_table& table, double rho, double d_m) {
    const sweep_row* lo = nullptr;
    const sweep_row* hi = nullptr;
    for (const auto& r : table.rows) {
        if (r.rho != rho || !r.dt_feasible || !r.ct_feasible) continue;
        if (r.d_m <= d_m && (!lo || r.d_m > lo->d_m)) lo = &r;
        if (r.d_m >= d_m && (!hi || r.d_m < hi->d_m)) hi = &r;
    }
    if (!lo || !hi) throw std::domain_error("savings_at: no feasible bracketing rows");
    auto sav = [](const sweep_row& r) { return 1.0 - r.ct_energy / r.dt_energy; };
    if (lo == hi || hi->d_m == lo->d_m) return sav(*lo);
    const double t = (d_m - lo->d_m) / (hi->d_m - lo->d_m);
    return sav(*lo) * (1.0 - t) + sav(*hi) * t;
}

} // namespace relopt
