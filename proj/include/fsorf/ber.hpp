#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fsorf/relay.hpp"

namespace fsorf {

/// Finite sum of monomials c * x^e with real non-negative exponents,
/// kept sorted by exponent with duplicates merged.
struct GeneralizedPowerSeries {
    std::vector<std::pair<double, double>> terms;   // (exponent, coefficient)
};

GeneralizedPowerSeries series_multiply(const GeneralizedPowerSeries& a,
                                       const GeneralizedPowerSeries& b,
                                       int n_max);

/// t-th power by repeated products, truncated to the n_max smallest exponents.
GeneralizedPowerSeries series_integer_power(const GeneralizedPowerSeries& s,
                                            int t, int n_max);

/// (1/2) int_0^inf e^-g P_out(g) dg over [0, 60] plus an analytic tail bound
/// below e^-60 / 2; absolute error target 1e-9.
double dpsk_ber_quadrature(const std::function<double(double)>& outage_fn);

struct BerResult {
    double value;
    bool used_fallback;   ///< closed form failed; value is the quadrature route
};

/// Exact DPSK BER closed form for the GG+PE family (bivariate Meijer-G core);
/// falls back to quadrature over the exact outage when the series route fails.
BerResult dpsk_ber_gg_exact(const LinkConfig& cfg,
                            const GammaGammaPointingParams& fso,
                            const RayleighParams& rf,
                            const SeriesAccuracy& acc = {});

/// Asymptotic DPSK BER closed form for the NegExp family; fallback is
/// quadrature over the asymptotic outage (same mathematical object).
BerResult dpsk_ber_ne_asymptotic(const LinkConfig& cfg, const NegExpParams& fso,
                                 const RayleighParams& rf,
                                 const SeriesAccuracy& acc = {});

}  // namespace fsorf
