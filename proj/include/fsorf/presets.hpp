#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fsorf/channels.hpp"

namespace fsorf {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// turbulence regime presets: alpha = 4, beta = 1.9, xi = 10.45 (moderate);
// alpha = 4.2, beta = 1.4, xi = 2.45 (strong); saturate = NegExp, unit variance
inline GammaGammaPointingParams moderate_regime(double mean_snr) {
    return {4.0, 1.9, 10.45, mean_snr};
}
inline GammaGammaPointingParams strong_regime(double mean_snr) {
    return {4.2, 1.4, 2.45, mean_snr};
}
inline NegExpParams saturate_regime(double mean_snr) {
    return {1.0, mean_snr};
}

inline ChannelParams regime_channel(const std::string& name, double mean_snr) {
    if (name == "moderate") return moderate_regime(mean_snr);
    if (name == "strong") return strong_regime(mean_snr);
    if (name == "saturate") return saturate_regime(mean_snr);
    throw std::invalid_argument("unknown regime: " + name);
}

}  // namespace fsorf
