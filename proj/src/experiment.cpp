#include "relopt/experiment.hpp"
#include "relopt/errors.hpp"
#include "relopt/fading_simulator.hpp"
#include "relopt/power_optimizer.hpp"
#include "relopt/ser_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace relopt {
namespace {

const std::set<std::string> known_experiments = {
    "fig2-ser",       "fig5-relay-location", "fig6-ber-targets", "fig7-m075",
    "fig8-m-sweep",   "fig9-coopgain",       "table-opa",        "custom-sweep"};

const std::set<std::string> known_keys = {
    "m",          "m_sd",        "m_sr",           "m_rd",         "m_list",
    "m_dt",       "omega",       "omega_sd",       "omega_sr",     "omega_rd",
    "rho",        "rho_list",    "f",              "f_list",       "d_m",
    "d_list_m",   "d_start_m",   "d_stop_m",       "d_step_m",     "modulation",
    "order",      "target_ber",  "p_maxt_w",       "p_ctx_w",      "p_crx_w",
    "p_lo_w",     "eta",         "t_tr_s",         "packet_bits",  "bandwidth_hz",
    "noise_dbm_hz", "noise_figure_db", "mc_symbols", "mc_batch",   "seed",
    "snr_start_db", "snr_stop_db", "snr_step_db"};

struct resolved_config {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string str(const std::string& k, const std::string& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
    double num(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size())
            throw std::runtime_error("config: bad numeric value for '" + k + "'");
        return v;
    }
    long long integer(const std::string& k, long long dflt) const {
        return static_cast<long long>(num(k, double(dflt)));
    }
    std::vector<double> list(const std::string& k, const std::vector<double>& dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(std::stod(tok));
        if (out.empty()) throw std::runtime_error("config: empty list for '" + k + "'");
        return out;
    }
};

// One output row; NA-capable numeric cell.
struct cell {
    double v = 0.0;
    bool na = true;
    cell() = default;
    cell(double x) : v(x), na(false) {}
};

struct csv_row {
    cell d_m, rho, m, f, target_ber, p_s_w, p_r_w;
    cell energy_dt, energy_ct, cg;
    bool feasible_dt = false, feasible_ct = false;
    cell ser_exact, ser_asym, ser_mc, mc_stderr;
};

std::string fmt(const cell& c) {
    if (c.na) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", c.v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<csv_row>& rows) {
    std::ofstream out(path, std::ios::binary);
    out << "d_m,rho,m,f,target_ber,p_s_w,p_r_w,energy_dt_j_per_bit,energy_ct_j_per_bit,"
           "cg,feasible_dt,feasible_ct,ser_exact,ser_asym,ser_mc,mc_stderr\n";
    for (const auto& r : rows) {
        out << fmt(r.d_m) << ',' << fmt(r.rho) << ',' << fmt(r.m) << ',' << fmt(r.f) << ','
            << fmt(r.target_ber) << ',' << fmt(r.p_s_w) << ',' << fmt(r.p_r_w) << ','
            << fmt(r.energy_dt) << ',' << fmt(r.energy_ct) << ',' << fmt(r.cg) << ','
            << (r.feasible_dt ? '1' : '0') << ',' << (r.feasible_ct ? '1' : '0') << ','
            << fmt(r.ser_exact) << ',' << fmt(r.ser_asym) << ',' << fmt(r.ser_mc) << ','
            << fmt(r.mc_stderr) << '\n';
    }
}

fading_params fading_from(const resolved_config& c, double m_override = -1.0,
                          double rho_override = -1.0) {
    fading_params f;
    const double m_all = c.num("m", 1.25);
    f.m_sd = c.num("m_sd", m_all);
    f.m_sr = c.num("m_sr", m_all);
    f.m_rd = c.num("m_rd", m_all);
    const double omega_all = c.num("omega", 1.0);
    f.omega_sd = c.num("omega_sd", omega_all);
    f.omega_sr = c.num("omega_sr", omega_all);
    f.omega_rd = c.num("omega_rd", omega_all);
    f.rho = c.num("rho", 0.0);
    if (m_override > 0.0) f.m_sd = f.m_sr = f.m_rd = m_override;
    if (rho_override >= 0.0) f.rho = rho_override;
    return f;
}

energy_profile profile_from(const resolved_config& c) {
    energy_profile p;
    p.p_ctx = c.num("p_ctx_w", 0.1);
    p.p_crx = c.num("p_crx_w", 0.15);
    p.p_lo = c.num("p_lo_w", 0.05);
    p.eta = c.num("eta", 0.35);
    p.t_tr = c.num("t_tr_s", 5e-6);
    p.packet_bits = c.num("packet_bits", 2000.0);
    p.bandwidth_hz = c.num("bandwidth_hz", 2e5);
    p.p_maxt = c.num("p_maxt_w", 1.0);
    return p;
}

modulation modulation_from(const resolved_config& c) {
    const std::string fam = c.str("modulation", "qam");
    const int order = static_cast<int>(c.integer("order", 4));
    if (fam == "qam") return make_qam(order);
    if (fam == "psk") return make_psk(order);
    throw std::runtime_error("config: modulation must be 'qam' or 'psk'");
}

double noise_from(const resolved_config& c) {
    return noise_power(c.num("noise_dbm_hz", -174.0), c.num("bandwidth_hz", 2e5),
                       c.num("noise_figure_db", 6.0));
}

opa_problem problem_from(const resolved_config& c, double target_ber) {
    opa_problem pb;
    pb.p_star = target_ber;
    pb.profile = profile_from(c);
    pb.p_maxt = pb.profile.p_maxt;
    pb.fading = fading_from(c);
    pb.mod = modulation_from(c);
    pb.n0_w = noise_from(c);
    pb.geo.f = c.num("f", 0.5);
    pb.geo.d_sd_km = c.num("d_m", 600.0) / 1000.0;
    return pb;
}

std::vector<double> distance_grid(const resolved_config& c, double start, double stop,
                                  double step) {
    if (c.has("d_list_m")) return c.list("d_list_m", {});
    const double d0 = c.num("d_start_m", start);
    const double d1 = c.num("d_stop_m", stop);
    const double dd = c.num("d_step_m", step);
    if (!(d0 > 0 && d1 >= d0 && dd > 0))
        throw std::runtime_error("config: bad distance grid");
    std::vector<double> g;
    for (double d = d0; d <= d1 + 1e-9; d += dd) g.push_back(d);
    return g;
}

csv_row row_from_sweep(const sweep_row& s, double m, double f, double target) {
    csv_row r;
    r.d_m = s.d_m;
    r.rho = s.rho;
    r.m = m;
    r.f = f;
    r.target_ber = target;
    r.feasible_dt = s.dt_feasible;
    r.feasible_ct = s.ct_feasible;
    if (s.dt_feasible) r.energy_dt = s.dt_energy;
    if (s.ct_feasible) {
        r.p_s_w = s.ct_p_s;
        r.p_r_w = s.ct_p_r;
        r.energy_ct = s.ct_energy;
    }
    if (s.dt_feasible && s.ct_feasible) r.cg = s.cg;
    return r;
}

void summarize_sweep(std::ostream& os, const sweep_table& table, double m, double f,
                     double target) {
    for (const auto& s : table.summaries) {
        os << "m=" << m << " f=" << f << " target_ber=" << target << " rho=" << s.rho << ": ";
        if (s.crossover_m > 0)
            os << "crossover_m=" << s.crossover_m;
        else
            os << "crossover_m=none";
        os << " dt_max_reach_m=" << s.dt_max_reach_m << " ct_max_reach_m=" << s.ct_max_reach_m;
        if (s.dt_max_reach_m > 0) {
            try {
                os << " savings_at_dt_reach=" << savings_at(table, s.rho, s.dt_max_reach_m);
            } catch (const std::exception&) {
                os << " savings_at_dt_reach=NA";
            }
        }
        os << "\n";
    }
}

struct run_outputs {
    std::vector<csv_row> rows;
    std::ostringstream summary;
    bool accuracy_trouble = false;
};

void run_sweep_family(const resolved_config& cfg, run_outputs& out,
                      const std::vector<double>& m_list, const std::vector<double>& f_list,
                      const std::vector<double>& target_list,
                      const std::vector<double>& rho_list, const std::vector<double>& grid,
                      std::optional<double> m_dt = std::nullopt) {
    for (double m : m_list) {
        for (double f : f_list) {
            for (double target : target_list) {
                opa_problem pb = problem_from(cfg, target);
                pb.fading.m_sd = pb.fading.m_sr = pb.fading.m_rd = m;
                const int bits = pb.mod.bits();
                try {
                    sweep_table tab = sweep_distance(pb, grid, f, rho_list);
                    if (m_dt && *m_dt != m) {
                        // DT reference curve evaluated at a different shape
                        opa_problem dtpb = pb;
                        dtpb.fading.m_sd = dtpb.fading.m_sr = dtpb.fading.m_rd = *m_dt;
                        sweep_table dtt = sweep_distance(dtpb, grid, f, rho_list);
                        for (size_t i = 0; i < tab.rows.size(); ++i) {
                            sweep_row& r = tab.rows[i];
                            r.dt_feasible = dtt.rows[i].dt_feasible;
                            r.dt_p_s = dtt.rows[i].dt_p_s;
                            r.dt_energy = dtt.rows[i].dt_energy;
                            r.dt_ber = dtt.rows[i].dt_ber;
                            if (r.dt_feasible && r.ct_feasible) {
                                energy_breakdown dte, cte;
                                dte.e_total_per_bit = r.dt_energy;
                                cte.e_total_per_bit = r.ct_energy;
                                r.cg = cooperation_gain(dte, r.dt_ber, cte, r.ct_ber);
                            } else {
                                r.cg = 0.0;
                            }
                        }
                        // recompute summaries against the mixed curves
                        for (auto& s : tab.summaries) {
                            s.crossover_m = -1.0;
                            s.dt_max_reach_m = -1.0;
                            double pd = 0, pc = 0, px = 0;
                            bool prev = false;
                            for (const auto& r : tab.rows) {
                                if (r.rho != s.rho) continue;
                                if (r.dt_feasible) s.dt_max_reach_m = r.d_m;
                                if (r.dt_feasible && r.ct_feasible) {
                                    if (s.crossover_m < 0 && r.ct_energy < r.dt_energy) {
                                        if (prev && pc >= pd) {
                                            const double g0 = pc - pd;
                                            const double g1 = r.ct_energy - r.dt_energy;
                                            s.crossover_m = px + (r.d_m - px) * g0 / (g0 - g1);
                                        } else {
                                            s.crossover_m = r.d_m;
                                        }
                                    }
                                    prev = true;
                                    pd = r.dt_energy;
                                    pc = r.ct_energy;
                                    px = r.d_m;
                                } else {
                                    prev = false;
                                }
                            }
                        }
                    }
                    for (const auto& s : tab.rows) {
                        csv_row r = row_from_sweep(s, m, f, target);
                        if (s.ct_feasible) r.ser_exact = s.ct_ber * bits;
                        out.rows.push_back(r);
                    }
                    summarize_sweep(out.summary, tab, m, f, target);
                } catch (const accuracy_error& e) {
                    out.accuracy_trouble = true;
                    out.summary << "accuracy error in sweep m=" << m << " f=" << f
                                << " target=" << target << ": " << e.what() << "\n";
                }
            }
        }
    }
}

void run_fig2(const resolved_config& cfg, std::uint64_t seed, long long mc_symbols,
              run_outputs& out) {
    const std::vector<double> m_list = cfg.list("m_list", {0.75, 1.25});
    const std::vector<double> rho_list = cfg.list("rho_list", {0.0, 0.5, 0.9});
    const double f = cfg.num("f", 0.5);
    const double d_m = cfg.num("d_m", 600.0);
    const double snr0 = cfg.num("snr_start_db", 0.0);
    const double snr1 = cfg.num("snr_stop_db", 32.0);
    const double dsnr = cfg.num("snr_step_db", 4.0);
    const modulation mod = modulation_from(cfg);
    const double n0 = noise_from(cfg);
    geometry geo{d_m / 1000.0, f};
    const double pl_sd = path_loss(geo.d_sd_km).linear;

    long long batch = cfg.integer("mc_batch", 1000000);
    int combo = 0;
    for (double m : m_list) {
        for (double rho : rho_list) {
            fading_params fad = fading_from(cfg, m, rho);
            double worst_z = 0.0;
            for (double snr_db = snr0; snr_db <= snr1 + 1e-9; snr_db += dsnr) {
                // grid is indexed by the S-D average SNR; power split equally
                const double gamma_sd = std::pow(10.0, snr_db / 10.0);
                const double p_s = gamma_sd * pl_sd * n0 / fad.omega_sd;
                link_budget lb = make_budget(geo, n0, p_s, p_s);
                csv_row r;
                r.d_m = d_m;
                r.rho = rho;
                r.m = m;
                r.f = f;
                r.p_s_w = p_s;
                r.p_r_w = p_s;
                try {
                    const ser_result exact = ser_coop_exact(lb, fad, mod);
                    const ser_result asym = ser_coop_asymptotic(lb, fad, mod);
                    r.ser_exact = exact.ser;
                    r.ser_asym = asym.ser;
                    if (mc_symbols > 0) {
                        mc_config mc;
                        mc.n_symbols = mc_symbols;
                        mc.batch = batch;
                        mc.seed = seed + 1000003ull * combo +
                                  std::uint64_t(std::llround(snr_db * 64.0));
                        mc_estimate est = simulate_df_link(lb, fad, mod, mc);
                        r.ser_mc = est.ser_hat;
                        r.mc_stderr = est.std_err;
                        if (est.std_err > 0)
                            worst_z = std::max(worst_z,
                                               std::fabs(est.ser_hat - exact.ser) / est.std_err);
                    }
                } catch (const accuracy_error&) {
                    out.accuracy_trouble = true;
                }
                out.rows.push_back(r);
            }
            out.summary << "fig2 m=" << m << " rho=" << rho
                        << " worst_mc_z_score=" << worst_z << "\n";
            ++combo;
        }
    }
}

void run_table_opa(const resolved_config& cfg, run_outputs& out) {
    const std::vector<double> d_list =
        cfg.list("d_list_m", {100.0, 200.0, 300.0, 400.0, 500.0, 600.0});
    const std::vector<double> rho_list = cfg.list("rho_list", {cfg.num("rho", 0.0)});
    run_sweep_family(cfg, out, {cfg.num("m", 1.25)}, {cfg.num("f", 0.5)},
                     {cfg.num("target_ber", 1e-2)}, rho_list, d_list);
}

} // namespace

bool experiment_config::is_known_experiment(const std::string& name) {
    return known_experiments.count(name) > 0;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

int run_experiment(const experiment_config& config) {
    try {
        if (!experiment_config::is_known_experiment(config.experiment)) {
            std::cerr << "unknown experiment: " << config.experiment << "\n";
            return 2;
        }
        resolved_config cfg;
        cfg.kv = config.overrides;
        for (const auto& [k, v] : cfg.kv) {
            if (!known_keys.count(k)) {
                std::cerr << "unknown config key: " << k << "\n";
                return 2;
            }
            (void)v;
        }
        std::filesystem::create_directories(config.output_dir);

        const std::uint64_t seed = std::uint64_t(cfg.integer("seed", 12345));
        const long long mc_symbols = cfg.integer("mc_symbols", 1000000);

        run_outputs out;
        const std::string ex = config.experiment;
        if (ex == "fig2-ser") {
            run_fig2(cfg, seed, mc_symbols, out);
        } else if (ex == "fig5-relay-location") {
            run_sweep_family(cfg, out, {cfg.num("m", 1.25)},
                             cfg.list("f_list", {0.1, 0.5, 0.9}),
                             {cfg.num("target_ber", 1e-2)}, cfg.list("rho_list", {0.0}),
                             distance_grid(cfg, 50, 700, 10));
        } else if (ex == "fig6-ber-targets") {
            run_sweep_family(cfg, out, {cfg.num("m", 1.25)}, {cfg.num("f", 0.5)},
                             {1e-2, 1e-3}, cfg.list("rho_list", {0.0, 0.5, 0.9}),
                             distance_grid(cfg, 50, 700, 10));
        } else if (ex == "fig7-m075") {
            run_sweep_family(cfg, out, {cfg.num("m", 0.75)}, {cfg.num("f", 0.5)},
                             {cfg.num("target_ber", 1e-2)},
                             cfg.list("rho_list", {0.0, 0.5, 0.9}),
                             distance_grid(cfg, 50, 700, 10));
        } else if (ex == "fig8-m-sweep") {
            run_sweep_family(cfg, out, cfg.list("m_list", {0.75, 1.25, 1.75, 2.25}),
                             {cfg.num("f", 0.5)}, {cfg.num("target_ber", 1e-3)},
                             cfg.list("rho_list", {0.0}), distance_grid(cfg, 50, 700, 10),
                             cfg.num("m_dt", 2.25));
        } else if (ex == "fig9-coopgain") {
            run_sweep_family(cfg, out, {cfg.num("m", 1.25)}, {cfg.num("f", 0.5)},
                             {cfg.num("target_ber", 1e-2)},
                             cfg.list("rho_list", {0.0, 0.5, 0.9}),
                             distance_grid(cfg, 50, 390, 10));
        } else if (ex == "table-opa") {
            run_table_opa(cfg, out);
        } else if (ex == "custom-sweep") {
            run_sweep_family(cfg, out, {cfg.num("m", 1.25)}, {cfg.num("f", 0.5)},
                             {cfg.num("target_ber", 1e-2)},
                             cfg.list("rho_list", {cfg.num("rho", 0.0)}),
                             distance_grid(cfg, 100, 100, 10));
        }

        const std::filesystem::path dir(config.output_dir);
        write_csv((dir / "results.csv").string(), out.rows);
        {
            std::ofstream s(dir / "summary.txt", std::ios::binary);
            s << out.summary.str();
        }
        {
            std::ofstream mf(dir / "manifest.txt", std::ios::binary);
            mf << "experiment=" << config.experiment << "\n";
            mf << "seed=" << seed << "\n";
            mf << "mc_symbols=" << mc_symbols << "\n";
            for (const auto& [k, v] : cfg.kv) mf << k << "=" << v << "\n";
        }
        return out.accuracy_trouble ? 3 : 0;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace relopt
