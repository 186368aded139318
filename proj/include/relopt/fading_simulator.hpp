#pragma once

#include "relopt/link_model.hpp"
#include "relopt/modulation.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace relopt {

struct mc_config {
    long long n_symbols = 1000000;
    std::uint64_t seed = 1;
    long long batch = 100000;
    bool force_relay_idle = false; // test hook: relay never transmits

    void validate() const {
        if (n_symbols < 10000) throw std::domain_error("mc_config: n_symbols must be >= 1e4");
        if (batch <= 0) throw std::domain_error("mc_config: batch must be > 0");
    }
};

struct mc_estimate {
    double ser_hat = 0.0;
    double std_err = 0.0;
    long long n_errors = 0;
    long long n_symbols = 0;
    long long n_relay_idle = 0; // phase-II suppressed (relay decoded wrong)
};

// Draws a pair of Gamma(m, mean omega_i) channel powers whose joint law has
// the bivariate-Gamma MGF used by the analytic chain, i.e. power correlation
// exactly rho for any m > 0. Construction: X ~ Gamma(m, th1),
// K | X ~ Poisson(rho X / ((1-rho) th1)), Y | K ~ Gamma(m + K, (1-rho) th2).
std::pair<double, double> sample_correlated_gamma_pair(double m, double omega1, double omega2,
                                                       double rho, std::mt19937_64& rng);

// Gaussian-sum construction (2m i.i.d. correlated normal pairs, r = sqrt(rho));
// valid when 2m is an integer. Kept as an independent cross-check of the
// sampler above, with which it agrees in law.
std::pair<double, double> sample_correlated_gamma_pair_gaussian(double m, double omega1,
                                                                double omega2, double rho,
                                                                std::mt19937_64& rng);

// Symbol-level two-phase DF simulation with MRC detection at the destination.
// The relay re-transmits only symbols it decoded correctly.
mc_estimate simulate_df_link(const link_budget& budget, const fading_params& fading,
                             const modulation& mod, const mc_config& mc);

} // namespace relopt
