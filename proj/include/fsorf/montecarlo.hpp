#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "fsorf/relay.hpp"

namespace fsorf {

enum class Gamma1Mode { shared, independent };

struct SimConfig {
    std::uint64_t trials = 10'000'000;
    std::uint64_t seed = 1;
    Gamma1Mode mode = Gamma1Mode::independent;
    int workers = 1;
};

struct SimResult {
    double outage_rate;
    double outage_ci95;
    double ber_estimate;
    double ber_ci95;
    std::uint64_t trials_used;
};

/// Trial simulator of the full chain: N-branch SC at the first relay,
/// fixed-gain AF to the second relay (FSO and RF in parallel), then M-1
/// demodulate-and-forward hybrid hops; gamma_eq = min over relay stages.
/// Semi-analytic BER accumulates (1/2) e^-gamma_eq per trial.
/// Results are a pure function of (seed, trials, mode, parameters).
SimResult simulate_link(const LinkConfig& cfg, const ChannelParams& fso,
                        const RayleighParams& rf, double gamma_th,
                        const SimConfig& sim);

/// Single AF branch end-to-end SNR g1 g2 / (C + g2); outage event against
/// `gamma`. Oracle companion of af_relay_cdf.
SimResult simulate_af_branch(AfBranch branch, const LinkConfig& cfg,
                             const ChannelParams& second_hop,
                             const RayleighParams& rf1, double gamma,
                             const SimConfig& sim);

/// Fraction of sorted samples <= gamma.
double empirical_cdf(std::span<const double> sorted_samples, double gamma);

/// Kolmogorov-Smirnov sup distance between the sample set and a model CDF.
double ks_distance(std::span<const double> sorted_samples,
                   const std::function<double(double)>& cdf);

}  // namespace fsorf
