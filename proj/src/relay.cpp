#include "fsorf/relay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsorf/quadrature.hpp"

namespace fsorf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

long double binom(int n, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

void validate(const LinkConfig& cfg) {
    if (cfg.n_antennas < 1 || cfg.n_relays < 1)
        throw std::domain_error("LinkConfig: N and M must be >= 1");
    if (!(cfg.fixed_gain_c > 0) || !(cfg.eta > 0) || !(cfg.gamma_th > 0))
        throw std::domain_error("LinkConfig: C, eta, gamma_th must be positive");
}

double sc_cdf(const RayleighParams& p, int n_antennas, double gamma) {
    validate(p);
    if (n_antennas < 1) throw std::domain_error("sc_cdf: N must be >= 1");
    if (gamma < 0) throw std::domain_error("sc_cdf: gamma must be non-negative");
    return std::pow(-std::expm1(-gamma / p.mean_snr), n_antennas);
}

double sc_pdf(const RayleighParams& p, int n_antennas, double gamma) {
    validate(p);
    if (n_antennas < 1) throw std::domain_error("sc_pdf: N must be >= 1");
    if (!(gamma > 0)) throw std::domain_error("sc_pdf: gamma must be positive");
    // Kahan-compensated alternating binomial sum; cancellation grows with N
    long double sum = 0.0L, comp = 0.0L;
    for (int k = 0; k < n_antennas; ++k) {
        const long double term = binom(n_antennas - 1, k) * ((k & 1) ? -1.0L : 1.0L) *
                                 std::exp(-(long double)(k + 1) * gamma / p.mean_snr);
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::max(0.0, (double)(n_antennas / (long double)p.mean_snr * sum));
}

namespace {

// per-k bracket of the closed forms (20), (22), (24)
double af_bracket(AfBranch branch, const LinkConfig& cfg, const ChannelParams& ch,
                  const RayleighParams& rf1, double gamma, int k,
                  const SeriesAccuracy& acc) {
    const double gr = rf1.mean_snr;
    switch (branch) {
        case AfBranch::gg: {
            const auto& p = std::get<GammaGammaPointingParams>(ch);
            const double xi2 = p.xi2();
            const double abk = p.alpha * p.beta * p.kappa();
            MeijerGSpec s;
            s.m = 6; s.n = 1; s.p = 2; s.q = 7;
            s.a = {1.0, (xi2 + 2.0) / 2.0};
            s.b = {1.0, xi2 / 2.0, p.alpha / 2.0, (p.alpha + 1.0) / 2.0,
                   p.beta / 2.0, (p.beta + 1.0) / 2.0, 0.0};
            s.z = abk * abk * cfg.fixed_gain_c * (k + 1) * gamma /
                  (16.0 * p.mean_snr * gr);
            const double kg = xi2 * std::pow(2.0, p.alpha + p.beta - 3.0) /
                              (kPi * std::tgamma(p.alpha) * std::tgamma(p.beta));
            return 1.0 - kg * meijer_g(s, acc);
        }
        case AfBranch::ne: {
            const auto& p = std::get<NegExpParams>(ch);
            MeijerGSpec s;
            s.m = 3; s.n = 0; s.p = 0; s.q = 3;
            s.b = {1.0, 0.0, 0.5};
            s.z = p.lambda * p.lambda * cfg.fixed_gain_c * (k + 1) * gamma /
                  (4.0 * p.mean_snr * gr);
            return meijer_g(s, acc) / std::sqrt(kPi);
        }
        case AfBranch::rf: {
            const auto& p = std::get<RayleighParams>(ch);
            MeijerGSpec s;
            s.m = 2; s.n = 0; s.p = 0; s.q = 2;
            s.b = {1.0, 0.0};
            s.z = cfg.fixed_gain_c * (k + 1) * gamma / (p.mean_snr * gr);
            return meijer_g(s, acc);
        }
    }
    throw std::logic_error("af_bracket: bad branch");
}

}  // namespace

double af_relay_cdf(AfBranch branch, const LinkConfig& cfg, const ChannelParams& ch,
                    const RayleighParams& rf1, double gamma,
                    const SeriesAccuracy& acc) {
    validate(cfg);
    validate(rf1);
    if (gamma < 0) throw std::domain_error("af_relay_cdf: gamma must be non-negative");
    if (gamma == 0) return 0.0;
    const int N = cfg.n_antennas;
    long double sum = 0.0L;
    for (int k = 0; k < N; ++k) {
        const long double coef = binom(N - 1, k) * ((k & 1) ? -1.0L : 1.0L) *
                                 (long double)N / (k + 1);
        sum += coef * std::exp(-(long double)(k + 1) * gamma / rf1.mean_snr) *
               (long double)af_bracket(branch, cfg, ch, rf1, gamma, k, acc);
    }
    return clamp01((double)(1.0L - sum));
}

double af_relay_cdf_quadrature(AfBranch branch, const LinkConfig& cfg,
                               const ChannelParams& ch, const RayleighParams& rf1,
                               double gamma) {
    validate(cfg);
    validate(rf1);
    if (gamma < 0) throw std::domain_error("af_relay_cdf_quadrature: gamma < 0");
    if (gamma == 0) return 0.0;
    const double gr = rf1.mean_snr;
    const double C = cfg.fixed_gain_c;
    auto second_hop_cdf = [&](double v) {
        switch (branch) {
            case AfBranch::gg:
                return gg_pe_cdf(std::get<GammaGammaPointingParams>(ch), v);
            case AfBranch::ne:
                return ne_cdf(std::get<NegExpParams>(ch), v);
            case AfBranch::rf:
                return rayleigh_cdf(std::get<RayleighParams>(ch), v);
        }
        return 0.0;
    };
    // F_Z(g) = F_{g1}(g) + int_0^inf F_{g2}(g C / x) f_{g1}(x + g) dx
    auto integrand = [&](double u) {
        const double x = gr * u;
        if (x <= 0.0) return 0.0;
        return second_hop_cdf(gamma * C / x) * sc_pdf(rf1, cfg.n_antennas, x + gamma) * gr;
    };
    const double tail = integrate_segmented(integrand, {0.0, 0.25, 1.0, 4.0, 16.0, 70.0},
                                            1e-13, 1e-9);
    return clamp01(sc_cdf(rf1, cfg.n_antennas, gamma) + tail);
}

double opportunistic_cdf(double f_fso, double f_rf) {
    if (f_fso < 0 || f_fso > 1 || f_rf < 0 || f_rf > 1)
        throw std::domain_error("opportunistic_cdf: inputs must be probabilities");
    return f_fso * f_rf;
}

}  // namespace fsorf
