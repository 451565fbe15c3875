#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "fsorf/rng.hpp"
#include "fsorf/specfun.hpp"

namespace fsorf {

/// Gamma-Gamma turbulence with pointing error, SNR domain.
struct GammaGammaPointingParams {
    double alpha;      ///< turbulence shape
    double beta;       ///< turbulence shape
    double xi;         ///< pointing-error severity ratio
    double mean_snr;   ///< average SNR (linear)

    double xi2() const { return xi * xi; }
    double kappa() const { return xi * xi / (xi * xi + 1.0); }
};

/// Negative Exponential turbulence (saturate regime), SNR domain.
struct NegExpParams {
    double lambda;     ///< irradiance rate; 1/lambda^2 is the irradiance variance
    double mean_snr;   ///< average SNR (linear)

    /// slope of the small-argument CDF F(g) ~ theta sqrt(g)
    double theta() const;
};

struct RayleighParams {
    double mean_snr;   ///< average SNR (linear)
};

using ChannelParams =
    std::variant<GammaGammaPointingParams, NegExpParams, RayleighParams>;

enum class GgCdfMethod { meijerg, series };
enum class NeCdfMethod { exact, asymptotic };

/// Power-series CDF coefficients: F(g) = x0 r^(xi2/2) + sum_n y[n] r^((n+alpha)/2)
/// + sum_n z[n] r^((n+beta)/2), r = g / mean_snr.
struct SeriesCdfCoeffs {
    double x0;
    std::vector<double> y;
    std::vector<double> z;
    double alpha, beta, xi2;
};

SeriesCdfCoeffs series_cdf_coeffs(const GammaGammaPointingParams& p, int n_max = 64);

/// Evaluate the power-series CDF at r = gamma / mean_snr.
double series_cdf_value(const SeriesCdfCoeffs& c, double r);

double gg_pe_pdf(const GammaGammaPointingParams& p, double gamma);
double gg_pe_cdf(const GammaGammaPointingParams& p, double gamma,
                 GgCdfMethod method = GgCdfMethod::meijerg);
double ne_cdf(const NegExpParams& p, double gamma,
              NeCdfMethod method = NeCdfMethod::exact);
double rayleigh_cdf(const RayleighParams& p, double gamma);

/// One instantaneous-SNR draw from the channel law.
double sample_snr(const ChannelParams& ch, RngStream& rng);

/// Gamma-Gamma shapes (alpha, beta) from the Rytov variance.
std::pair<double, double> turbulence_params_from_rytov(double rytov_var);

void validate(const GammaGammaPointingParams& p);
void validate(const NegExpParams& p);
void validate(const RayleighParams& p);

}  // namespace fsorf
