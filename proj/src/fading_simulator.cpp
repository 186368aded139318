#include "relopt/fading_simulator.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace relopt {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Min-distance symbol decision on the unit-energy constellation given the
// matched-filter statistic z = x + n / sqrt(gamma).
struct detector {
    const modulation& mod;
    int root_m;     // QAM: points per axis
    double spacing; // QAM: half distance between neighbours

    explicit detector(const modulation& m) : mod(m) {
        root_m = static_cast<int>(std::lround(std::sqrt(double(m.order))));
        spacing = std::sqrt(3.0 / (2.0 * (m.order - 1.0)));
    }

    // symbol index -> constellation point
    std::complex<double> point(int idx) const {
        if (mod.family == mod_family::qam) {
            const int i = idx % root_m, q = idx / root_m;
            return {spacing * (2 * i - root_m + 1), spacing * (2 * q - root_m + 1)};
        }
        const double ph = 2.0 * 3.14159265358979323846 * idx / mod.order;
        return {std::cos(ph), std::sin(ph)};
    }

    int decide(std::complex<double> z) const {
        if (mod.family == mod_family::qam) {
            auto axis = [&](double v) {
                int i = static_cast<int>(std::lround((v / spacing + root_m - 1) / 2.0));
                return std::min(std::max(i, 0), root_m - 1);
            };
            return axis(z.real()) + root_m * axis(z.imag());
        }
        const double two_pi = 2.0 * 3.14159265358979323846;
        double ph = std::atan2(z.imag(), z.real());
        if (ph < 0) ph += two_pi;
        int k = static_cast<int>(std::lround(ph / (two_pi / mod.order)));
        return k % mod.order;
    }
};

struct batch_counts {
    long long errors = 0;
    long long relay_idle = 0;
};

batch_counts run_batch(const link_budget& budget, const fading_params& fading,
                       const modulation& mod, long long n, std::uint64_t seed,
                       bool force_relay_idle) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> symbol_pick(0, mod.order - 1);
    std::gamma_distribution<double> gamma_sr(fading.m_sr, fading.omega_sr / fading.m_sr);
    const detector det(mod);

    const double inv_n0 = 1.0 / budget.n0_w;
    const double k_sd = budget.p_s / budget.pl_sd * inv_n0;
    const double k_sr = budget.p_s / budget.pl_sr * inv_n0;
    const double k_rd = budget.p_r / budget.pl_rd * inv_n0;
    const double inv_sqrt2 = 0.70710678118654752;

    batch_counts out;
    for (long long i = 0; i < n; ++i) {
        auto [w_sd, w_rd] = sample_correlated_gamma_pair(fading.m_sd, fading.omega_sd,
                                                         fading.omega_rd, fading.rho, rng);
        const double w_sr = gamma_sr(rng);

        const int tx = symbol_pick(rng);
        const std::complex<double> x = det.point(tx);

        // phase I at the relay
        bool relay_active = false;
        if (!force_relay_idle && budget.p_r > 0.0) {
            const double g_sr = k_sr * w_sr;
            if (g_sr > 0.0) {
                const std::complex<double> n_r(normal(rng) * inv_sqrt2, normal(rng) * inv_sqrt2);
                const std::complex<double> z_r = x + n_r / std::sqrt(g_sr);
                relay_active = det.decide(z_r) == tx;
            }
        }
        if (!relay_active) ++out.relay_idle;

        // destination MRC over the active branches
        const double g_mrc = k_sd * w_sd + (relay_active ? k_rd * w_rd : 0.0);
        int rx;
        if (g_mrc > 0.0) {
            const std::complex<double> n_d(normal(rng) * inv_sqrt2, normal(rng) * inv_sqrt2);
            rx = det.decide(x + n_d / std::sqrt(g_mrc));
        } else {
            rx = symbol_pick(rng); // no signal energy: decision is a coin toss
        }
        if (rx != tx) ++out.errors;
    }
    return out;
}

} // namespace

std::pair<double, double> sample_correlated_gamma_pair(double m, double omega1, double omega2,
                                                       double rho, std::mt19937_64& rng) {
    if (!(m > 0.0 && omega1 > 0.0 && omega2 > 0.0))
        throw std::domain_error("sample_correlated_gamma_pair: need m, omega > 0");
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error("sample_correlated_gamma_pair: rho must be in [0, 1)");
    const double th1 = omega1 / m;
    const double th2 = omega2 / m;
    std::gamma_distribution<double> g1(m, th1);
    const double x = g1(rng);
    if (rho == 0.0) {
        std::gamma_distribution<double> g2(m, th2);
        return {x, g2(rng)};
    }
    std::poisson_distribution<long> pois(rho * x / ((1.0 - rho) * th1));
    const long k = pois(rng);
    std::gamma_distribution<double> g2(m + double(k), (1.0 - rho) * th2);
    return {x, g2(rng)};
}

std::pair<double, double> sample_correlated_gamma_pair_gaussian(double m, double omega1,
                                                                double omega2, double rho,
                                                                std::mt19937_64& rng) {
    const long n2m = std::lround(2.0 * m);
    if (std::fabs(2.0 * m - double(n2m)) > 1e-9 || n2m < 1)
        throw std::domain_error("gaussian-pair construction needs 2m integer");
    std::normal_distribution<double> normal(0.0, 1.0);
    const double r = std::sqrt(rho);
    const double cr = std::sqrt(1.0 - rho);
    const double s1 = std::sqrt(omega1 / (2.0 * m));
    const double s2 = std::sqrt(omega2 / (2.0 * m));
    double p1 = 0.0, p2 = 0.0;
    for (long i = 0; i < n2m; ++i) {
        const double u = normal(rng);
        const double v = r * u + cr * normal(rng);
        p1 += s1 * u * s1 * u;
        p2 += s2 * v * s2 * v;
    }
    return {p1, p2};
}

mc_estimate simulate_df_link(const link_budget& budget, const fading_params& fading,
                             const modulation& mod, const mc_config& mc) {
    budget.validate();
    fading.validate();
    mc.validate();

    const long long n_batches = (mc.n_symbols + mc.batch - 1) / mc.batch;
    mc_estimate est;
    for (long long b = 0; b < n_batches; ++b) {
        const long long n = std::min(mc.batch, mc.n_symbols - b * mc.batch);
        const std::uint64_t seed = splitmix64(mc.seed ^ splitmix64(std::uint64_t(b) + 1));
        const batch_counts c =
            run_batch(budget, fading, mod, n, seed, mc.force_relay_idle);
        est.n_errors += c.errors;
        est.n_relay_idle += c.relay_idle;
    }
    est.n_symbols = mc.n_symbols;
    est.ser_hat = double(est.n_errors) / double(mc.n_symbols);
    est.std_err = std::sqrt(est.ser_hat * (1.0 - est.ser_hat) / double(mc.n_symbols));
    return est;
}

} // namespace relopt
