#pragma once

#include "fsorf/channels.hpp"
#include "fsorf/specfun.hpp"

namespace fsorf {

/// Topology and constants of the relay chain.
struct LinkConfig {
    int n_antennas = 2;        ///< N, receive antennas at the first relay
    int n_relays = 2;          ///< M, total relays (AF first, M-1 DF hops follow)
    double fixed_gain_c = 1.0; ///< C in G^2 = 1/(C sigma^2)
    double eta = 1.0;          ///< optical conversion efficiency (absorbed in mean SNRs)
    double gamma_th = 10.0;    ///< outage threshold (linear)
};

void validate(const LinkConfig& cfg);

enum class AfBranch { gg, ne, rf };

/// N-branch selection-combining CDF over i.i.d. Rayleigh branches.
double sc_cdf(const RayleighParams& p, int n_antennas, double gamma);

/// Matching pdf via the binomial expansion (compensated alternating sum).
double sc_pdf(const RayleighParams& p, int n_antennas, double gamma);

/// CDF of the fixed-gain AF end-to-end SNR g1 g2 / (C + g2), where g1 is the
/// N-branch selection-combining variable (first hop) and g2 follows the branch
/// law in `ch` (GG+PE or NegExp for the FSO branch, Rayleigh for RF).
double af_relay_cdf(AfBranch branch, const LinkConfig& cfg, const ChannelParams& ch,
                    const RayleighParams& rf1, double gamma,
                    const SeriesAccuracy& acc = {});

/// Same CDF by adaptive quadrature of the defining integral; the closed form's
/// independent oracle.
double af_relay_cdf_quadrature(AfBranch branch, const LinkConfig& cfg,
                               const ChannelParams& ch, const RayleighParams& rf1,
                               double gamma);

/// CDF of the max of two independent branches.
double opportunistic_cdf(double f_fso, double f_rf);

}  // namespace fsorf
