#pragma once

#include "fsorf/relay.hpp"

namespace fsorf {

enum class OutageForm { exact, expanded, series, asymptotic };

struct OutageRequest {
    LinkConfig cfg;
    ChannelParams fso;        ///< GG+PE or NegExp: FSO law of the AF branch and the DF hops
    RayleighParams rf;        ///< RF law (SC input, AF RF branch, DF-hop RF)
    OutageForm form = OutageForm::expanded;   ///< factored 'exact' kept as the cross-check
};

/// End-to-end outage probability, Gamma-Gamma + pointing error family.
/// Forms: exact (factored), expanded (binomial sums), series (power-series
/// substitution for the DF-hop CDF powers).
double outage_gg(const OutageRequest& req, double gamma_th);

/// End-to-end outage probability, Negative Exponential family.
/// Forms: exact, expanded, asymptotic (DF-hop CDF replaced by theta sqrt(g)).
double outage_ne(const OutageRequest& req, double gamma_th);

}  // namespace fsorf
