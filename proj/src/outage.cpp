#include "fsorf/outage.hpp"

#include <cmath>
#include <stdexcept>

#include "fsorf/ber.hpp"

namespace fsorf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

long double binom(int n, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

struct GgKernels {
    std::vector<double> g79;   // AF FSO bracket Meijer-G per k
    std::vector<double> g02;   // AF RF Meijer-G per k
    double kg;                 // xi^2 2^(a+b-3) / (pi G(a) G(b))
};

GgKernels gg_kernels(const LinkConfig& cfg, const GammaGammaPointingParams& p,
                     const RayleighParams& rf, double gth) {
    GgKernels K;
    const double xi2 = p.xi2();
    const double abk = p.alpha * p.beta * p.kappa();
    K.kg = xi2 * std::pow(2.0, p.alpha + p.beta - 3.0) /
           (kPi * std::tgamma(p.alpha) * std::tgamma(p.beta));
    for (int k = 0; k < cfg.n_antennas; ++k) {
        MeijerGSpec s;
        s.m = 6; s.n = 1; s.p = 2; s.q = 7;
        s.a = {1.0, (xi2 + 2.0) / 2.0};
        s.b = {1.0, xi2 / 2.0, p.alpha / 2.0, (p.alpha + 1.0) / 2.0,
               p.beta / 2.0, (p.beta + 1.0) / 2.0, 0.0};
        s.z = abk * abk * cfg.fixed_gain_c * (k + 1) * gth /
              (16.0 * p.mean_snr * rf.mean_snr);
        K.g79.push_back(meijer_g(s));

        MeijerGSpec r;
        r.m = 2; r.n = 0; r.p = 0; r.q = 2;
        r.b = {1.0, 0.0};
        r.z = cfg.fixed_gain_c * (k + 1) * gth / (rf.mean_snr * rf.mean_snr);
        K.g02.push_back(meijer_g(r));
    }
    return K;
}

std::vector<double> ne_kernels_g03(const LinkConfig& cfg, const NegExpParams& p,
                                   const RayleighParams& rf, double gth) {
    std::vector<double> g03;
    for (int k = 0; k < cfg.n_antennas; ++k) {
        MeijerGSpec s;
        s.m = 3; s.n = 0; s.p = 0; s.q = 3;
        s.b = {1.0, 0.0, 0.5};
        s.z = p.lambda * p.lambda * cfg.fixed_gain_c * (k + 1) * gth /
              (4.0 * p.mean_snr * rf.mean_snr);
        g03.push_back(meijer_g(s));
    }
    return g03;
}

// value of F_fso(gth)^t through the trinomial/convolution series device
double hop_cdf_power_series(const GammaGammaPointingParams& p, double gth, int t,
                            int n_max) {
    if (t == 0) return 1.0;
    const SeriesCdfCoeffs c = series_cdf_coeffs(p, n_max);
    const double s = std::sqrt(gth / p.mean_snr);
    GeneralizedPowerSeries Y, Z;
    for (int n = 0; n <= n_max; ++n) {
        Y.terms.emplace_back(n, c.y[n]);
        Z.terms.emplace_back(n, c.z[n]);
    }
    long double total = 0.0L;
    for (int k1 = 0; k1 <= t; ++k1) {
        for (int k2 = 0; k2 <= k1; ++k2) {
            const auto W = series_multiply(series_integer_power(Y, k1 - k2, n_max),
                                           series_integer_power(Z, k2, n_max), n_max);
            long double inner = 0.0L;
            for (const auto& [e, w] : W.terms)
                inner += (long double)w * std::pow(s, e);
            const long double lead =
                std::pow((long double)c.x0 * std::pow(s, c.xi2), t - k1) *
                std::pow(s, c.alpha * (k1 - k2) + c.beta * k2);
            total += binom(t, k1) * binom(k1, k2) * lead * inner;
        }
    }
    return (double)total;
}

}  // namespace

double outage_gg(const OutageRequest& req, double gamma_th) {
    validate(req.cfg);
    validate(req.rf);
    if (!(gamma_th > 0)) throw std::domain_error("outage_gg: gamma_th must be positive");
    const auto* p = std::get_if<GammaGammaPointingParams>(&req.fso);
    if (!p) throw std::invalid_argument("outage_gg: fso params must be Gamma-Gamma");
    validate(*p);
    if (req.form == OutageForm::asymptotic)
        throw std::invalid_argument("outage_gg: asymptotic form is NegExp-only");

    const int N = req.cfg.n_antennas, M = req.cfg.n_relays;
    const double gr = req.rf.mean_snr;

    if (req.form == OutageForm::exact) {
        const double f2f = af_relay_cdf(AfBranch::gg, req.cfg, req.fso, req.rf, gamma_th);
        const double f2r = af_relay_cdf(AfBranch::rf, req.cfg, ChannelParams{req.rf},
                                        req.rf, gamma_th);
        const double fhop = opportunistic_cdf(gg_pe_cdf(*p, gamma_th),
                                              rayleigh_cdf(req.rf, gamma_th));
        return clamp01(1.0 - (1.0 - f2f * f2r) * std::pow(1.0 - fhop, M - 1));
    }

    const GgKernels K = gg_kernels(req.cfg, *p, req.rf, gamma_th);
    const double f_fso = gg_pe_cdf(*p, gamma_th);
    long double s1 = 0.0L, s2 = 0.0L, s3 = 0.0L;
    for (int k = 0; k < N; ++k) {
        const double brk_k = 1.0 - K.kg * K.g79[k];
        for (int t = 0; t < M; ++t) {
            const double ft = (req.form == OutageForm::series)
                                  ? hop_cdf_power_series(*p, gamma_th, t, 64)
                                  : std::pow(f_fso, t);
            for (int u = 0; u <= t; ++u) {
                const long double om = binom(N - 1, k) * binom(M - 1, t) * binom(t, u) *
                                       (((k + t + u) & 1) ? -1.0L : 1.0L) *
                                       (long double)N / (k + 1);
                const long double base =
                    om * std::exp(-(long double)(k + u + 1) * gamma_th / gr) * ft;
                s1 += base * brk_k;
                s2 += base * K.g02[k];
                for (int g = 0; g < N; ++g) {
                    const long double cg = binom(N - 1, g) * ((g & 1) ? -1.0L : 1.0L) *
                                           (long double)N / (g + 1);
                    s3 += om * cg *
                          std::exp(-(long double)(k + g + u + 2) * gamma_th / gr) * ft *
                          K.g02[k] * (1.0 - K.kg * K.g79[g]);
                }
            }
        }
    }
    return clamp01((double)(1.0L - s1 - s2 + s3));
}

double outage_ne(const OutageRequest& req, double gamma_th) {
    validate(req.cfg);
    validate(req.rf);
    if (!(gamma_th > 0)) throw std::domain_error("outage_ne: gamma_th must be positive");
    const auto* p = std::get_if<NegExpParams>(&req.fso);
    if (!p) throw std::invalid_argument("outage_ne: fso params must be NegExp");
    validate(*p);
    if (req.form == OutageForm::series)
        throw std::invalid_argument("outage_ne: series form is Gamma-Gamma-only");

    const int N = req.cfg.n_antennas, M = req.cfg.n_relays;
    const double gr = req.rf.mean_snr;

    if (req.form == OutageForm::exact || req.form == OutageForm::asymptotic) {
        const double f2f = af_relay_cdf(AfBranch::ne, req.cfg, req.fso, req.rf, gamma_th);
        const double f2r = af_relay_cdf(AfBranch::rf, req.cfg, ChannelParams{req.rf},
                                        req.rf, gamma_th);
        const double fne = ne_cdf(*p, gamma_th,
                                  req.form == OutageForm::asymptotic
                                      ? NeCdfMethod::asymptotic
                                      : NeCdfMethod::exact);
        const double fhop = opportunistic_cdf(fne, rayleigh_cdf(req.rf, gamma_th));
        return clamp01(1.0 - (1.0 - f2f * f2r) * std::pow(1.0 - fhop, M - 1));
    }

    // expanded form: quadruple binomial sums
    const std::vector<double> g03 = ne_kernels_g03(req.cfg, *p, req.rf, gamma_th);
    std::vector<double> g02;
    for (int k = 0; k < N; ++k) {
        MeijerGSpec r;
        r.m = 2; r.n = 0; r.p = 0; r.q = 2;
        r.b = {1.0, 0.0};
        r.z = req.cfg.fixed_gain_c * (k + 1) * gamma_th / (gr * gr);
        g02.push_back(meijer_g(r));
    }
    const double root = std::sqrt(gamma_th / p->mean_snr);
    const double spi = std::sqrt(kPi);
    long double s1 = 0.0L, s2 = 0.0L, s3 = 0.0L;
    for (int k = 0; k < N; ++k) {
        for (int t = 0; t < M; ++t) {
            for (int u = 0; u <= t; ++u) {
                for (int v = 0; v <= t; ++v) {
                    const long double lam = binom(N - 1, k) * binom(M - 1, t) *
                                            binom(t, u) * binom(t, v) *
                                            (((k + t + u + v) & 1) ? -1.0L : 1.0L) *
                                            (long double)N / (k + 1);
                    const long double base =
                        lam * std::exp(-(long double)(k + u + 1) * gamma_th / gr) *
                        std::exp(-(long double)(p->lambda * v) * root);
                    s1 += base * g02[k];
                    s2 += base * g03[k] / spi;
                    for (int g = 0; g < N; ++g) {
                        const long double cg = binom(N - 1, g) *
                                               ((g & 1) ? -1.0L : 1.0L) *
                                               (long double)N / (g + 1);
                        s3 += lam * cg *
                              std::exp(-(long double)(k + g + u + 2) * gamma_th / gr) *
                              std::exp(-(long double)(p->lambda * v) * root) *
                              g02[k] * g03[g] / spi;
                    }
                }
            }
        }
    }
    return clamp01((double)(1.0L - s1 - s2 + s3));
}

}  // namespace fsorf
