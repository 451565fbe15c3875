#include "fsorf/ber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsorf/outage.hpp"
#include "fsorf/quadrature.hpp"

namespace fsorf {

namespace {

constexpr double kPi = 3.14159265358979323846;

long double binom(int n, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

void normalize(GeneralizedPowerSeries& s, int n_max) {
    std::sort(s.terms.begin(), s.terms.end());
    size_t w = 0;
    for (size_t i = 0; i < s.terms.size(); ++i) {
        if (w > 0 && std::fabs(s.terms[i].first - s.terms[w - 1].first) < 1e-10)
            s.terms[w - 1].second += s.terms[i].second;
        else
            s.terms[w++] = s.terms[i];
    }
    s.terms.resize(std::min(w, (size_t)n_max));
}

}  // namespace

GeneralizedPowerSeries series_multiply(const GeneralizedPowerSeries& a,
                                       const GeneralizedPowerSeries& b, int n_max) {
    GeneralizedPowerSeries out;
    out.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            out.terms.emplace_back(ea + eb, ca * cb);
    normalize(out, n_max);
    return out;
}

GeneralizedPowerSeries series_integer_power(const GeneralizedPowerSeries& s, int t,
                                            int n_max) {
    if (t < 0) throw std::invalid_argument("series_integer_power: t must be >= 0");
    GeneralizedPowerSeries out;
    out.terms = {{0.0, 1.0}};
    GeneralizedPowerSeries base = s;
    normalize(base, n_max);
    for (int i = 0; i < t; ++i) out = series_multiply(out, base, n_max);
    return out;
}

double dpsk_ber_quadrature(const std::function<double(double)>& outage_fn) {
    // e^-60 / 2 bounds the discarded tail below every tolerance in use
    auto f = [&](double g) {
        if (g <= 0.0) return 0.0;
        return std::exp(-g) * outage_fn(g);
    };
    const double v = integrate_segmented(f, {0.0, 0.5, 2.0, 8.0, 25.0, 60.0},
                                         1e-12, 1e-9);
    return std::min(0.5, std::max(0.0, 0.5 * v));
}

// ---------------------------------------------------------------------------
// exact GG BER closed form
// ---------------------------------------------------------------------------
namespace {

struct OverflowSignal {};

double g21(double z, double berth, const SeriesAccuracy& acc) {
    MeijerGSpec s;
    s.m = 2; s.n = 1; s.p = 1; s.q = 2;
    s.a = {-berth};
    s.b = {1.0, 0.0};
    s.z = z;
    return meijer_g(s, acc);
}

double ber_gg_closed(const LinkConfig& cfg, const GammaGammaPointingParams& p,
                     const RayleighParams& rf, const SeriesAccuracy& acc) {
    const int N = cfg.n_antennas, M = cfg.n_relays;
    const double gf = p.mean_snr, gr = rf.mean_snr, C = cfg.fixed_gain_c;
    const double xi2 = p.xi2();
    const double abk = p.alpha * p.beta * p.kappa();
    const double kg = xi2 * std::pow(2.0, p.alpha + p.beta - 3.0) /
                      (kPi * std::tgamma(p.alpha) * std::tgamma(p.beta));
    const int n_cap = 48;
    const SeriesCdfCoeffs co = series_cdf_coeffs(p, n_cap);

    const std::vector<double> lower7 = {1.0,          xi2 / 2.0,
                                        p.alpha / 2.0, (p.alpha + 1.0) / 2.0,
                                        p.beta / 2.0,  (p.beta + 1.0) / 2.0,
                                        0.0};
    MeijerGSpec g02_spec;
    g02_spec.m = 2; g02_spec.n = 0; g02_spec.p = 0; g02_spec.q = 2;
    g02_spec.b = {1.0, 0.0};
    MeijerGSpec g79_spec;
    g79_spec.m = 6; g79_spec.n = 1; g79_spec.p = 2; g79_spec.q = 7;
    g79_spec.a = {1.0, (xi2 + 2.0) / 2.0};
    g79_spec.b = lower7;

    GeneralizedPowerSeries Y, Z;
    for (int n = 0; n <= n_cap; ++n) {
        Y.terms.emplace_back(n, co.y[n]);
        Z.terms.emplace_back(n, co.z[n]);
    }

    long double t1 = 0.0L, t2 = 0.0L, t3 = 0.0L;
    long double scale = 0.0L;
    for (int k = 0; k < N; ++k) {
        const double yk = C * (k + 1) / (gr * gr);
        const double x7k = abk * abk * C * (k + 1) / (16.0 * gf * gr);
        for (int t = 0; t < M; ++t) {
            for (int u = 0; u <= t; ++u) {
                const long double om = binom(N - 1, k) * binom(M - 1, t) * binom(t, u) *
                                       (((k + t + u) & 1) ? -1.0L : 1.0L) *
                                       (long double)N / (k + 1);
                const double A1 = (k + u + 1) / gr;
                for (int k1 = 0; k1 <= t; ++k1) {
                    for (int k2 = 0; k2 <= k1; ++k2) {
                        const auto W = series_multiply(
                            series_integer_power(Y, k1 - k2, n_cap + 1),
                            series_integer_power(Z, k2, n_cap + 1), n_cap + 1);
                        const long double lead =
                            binom(t, k1) * binom(k1, k2) *
                            std::pow((long double)co.x0, t - k1);
                        if (lead == 0.0L) continue;
                        int quiet = 0;
                        for (const auto& [en, wn] : W.terms) {
                            if (wn == 0.0) continue;
                            const double berth = (en + xi2 * (t - k1) +
                                                  p.alpha * (k1 - k2) + p.beta * k2) /
                                                 2.0;
                            const auto lgb = ln_gamma(1.0 + berth);
                            if (lgb.log > 640.0) throw OverflowSignal{};
                            const long double cf =
                                om * lead * (long double)wn *
                                std::exp(-(long double)berth * std::log(gf) -
                                          (1.0L + berth) * std::log1p(A1));
                            if (cf == 0.0L) continue;

                            // T1 bracket: Gamma(1 + berth) - kg G^{7,3}_{5,9}
                            MeijerGSpec g59 = g79_spec;
                            g59.n = 2; g59.p = 3;
                            g59.a = {-berth, 1.0, (xi2 + 2.0) / 2.0};
                            g59.z = x7k / (1.0 + A1);
                            const double gamma_b = std::exp(lgb.log);
                            const long double c1 =
                                cf * (gamma_b - kg * meijer_g(g59, acc));
                            const long double c2 =
                                cf * g21(yk / (1.0 + A1), berth, acc);
                            t1 += c1;
                            t2 += c2;
                            long double c3sum = 0.0L;
                            for (int g = 0; g < N; ++g) {
                                const double x7g =
                                    abk * abk * C * (g + 1) / (16.0 * gf * gr);
                                const double A2 = (k + g + u + 2) / gr;
                                const long double cf3 =
                                    om * lead * (long double)wn *
                                    binom(N - 1, g) * ((g & 1) ? -1.0L : 1.0L) *
                                    (long double)N / (g + 1) *
                                    std::exp(-(long double)berth * std::log(gf) -
                                              (1.0L + berth) * std::log1p(A2));
                                if (cf3 == 0.0L) continue;
                                const double outer[] = {-berth};
                                const double ebmg = bivariate_meijer_g(
                                    outer, g02_spec, g79_spec, yk / (1.0 + A2),
                                    x7g / (1.0 + A2), acc);
                                c3sum += cf3 * (g21(yk / (1.0 + A2), berth, acc) -
                                                kg * ebmg);
                            }
                            t3 += c3sum;
                            const long double contrib =
                                std::fabs(c1) + std::fabs(c2) + std::fabs(c3sum);
                            scale += contrib;
                            if (contrib < 1e-14L * scale) {
                                if (++quiet >= 3) break;
                            } else {
                                quiet = 0;
                            }
                        }
                    }
                }
            }
        }
    }
    return (double)((1.0L - t1 - t2 + t3) / 2.0L);
}

double ber_ne_closed(const LinkConfig& cfg, const NegExpParams& p,
                     const RayleighParams& rf, const SeriesAccuracy& acc) {
    const int N = cfg.n_antennas, M = cfg.n_relays;
    const double gf = p.mean_snr, gr = rf.mean_snr, C = cfg.fixed_gain_c;
    const double th = p.theta();
    const double spi = std::sqrt(kPi);
    MeijerGSpec g02_spec;
    g02_spec.m = 2; g02_spec.n = 0; g02_spec.p = 0; g02_spec.q = 2;
    g02_spec.b = {1.0, 0.0};
    MeijerGSpec g03_spec;
    g03_spec.m = 3; g03_spec.n = 0; g03_spec.p = 0; g03_spec.q = 3;
    g03_spec.b = {1.0, 0.0, 0.5};

    long double u1 = 0.0L, u2 = 0.0L, u3 = 0.0L;
    for (int k = 0; k < N; ++k) {
        const double yk = C * (k + 1) / (gr * gr);
        const double x3k = p.lambda * p.lambda * C * (k + 1) / (4.0 * gf * gr);
        for (int t = 0; t < M; ++t) {
            const double ht = t / 2.0;
            for (int u = 0; u <= t; ++u) {
                const long double sig = binom(N - 1, k) * binom(M - 1, t) *
                                        binom(t, u) *
                                        (((k + t + u) & 1) ? -1.0L : 1.0L) *
                                        (long double)N / (k + 1);
                const double A1 = (k + u + 1) / gr;
                const long double cf =
                    sig * std::pow(th, t) *
                    std::exp(-(1.0L + ht) * std::log1p(A1));
                u1 += cf * g21(yk / (1.0 + A1), ht, acc);
                {
                    MeijerGSpec g31 = g03_spec;
                    g31.n = 1; g31.p = 1;
                    g31.a = {-ht};
                    g31.z = x3k / (1.0 + A1);
                    u2 += cf / spi * meijer_g(g31, acc);
                }
                for (int g = 0; g < N; ++g) {
                    const double x3g =
                        p.lambda * p.lambda * C * (g + 1) / (4.0 * gf * gr);
                    const double A2 = (k + g + u + 2) / gr;
                    const long double cf3 =
                        sig * binom(N - 1, g) * ((g & 1) ? -1.0L : 1.0L) *
                        (long double)N / (g + 1) * std::pow(th, t) / spi *
                        std::exp(-(1.0L + ht) * std::log1p(A2));
                    const double outer[] = {-ht};
                    const double ebmg = bivariate_meijer_g(
                        outer, g02_spec, g03_spec, yk / (1.0 + A2),
                        x3g / (1.0 + A2), acc);
                    u3 += cf3 * ebmg;
                }
            }
        }
    }
    return (double)((1.0L - u1 - u2 + u3) / 2.0L);
}

}  // namespace

BerResult dpsk_ber_gg_exact(const LinkConfig& cfg, const GammaGammaPointingParams& fso,
                            const RayleighParams& rf, const SeriesAccuracy& acc) {
    validate(cfg);
    validate(fso);
    validate(rf);
    try {
        const double v = ber_gg_closed(cfg, fso, rf, acc);
        if (std::isfinite(v) && v >= -1e-9 && v <= 0.5 + 1e-9)
            return {std::min(0.5, std::max(0.0, v)), false};
    } catch (const NonConvergenceError&) {
    } catch (const OverflowSignal&) {
    } catch (const std::domain_error&) {
    }
    OutageRequest req{cfg, ChannelParams{fso}, rf, OutageForm::expanded};
    return {dpsk_ber_quadrature([&](double g) { return outage_gg(req, g); }), true};
}

BerResult dpsk_ber_ne_asymptotic(const LinkConfig& cfg, const NegExpParams& fso,
                                 const RayleighParams& rf, const SeriesAccuracy& acc) {
    validate(cfg);
    validate(fso);
    validate(rf);
    try {
        const double v = ber_ne_closed(cfg, fso, rf, acc);
        if (std::isfinite(v) && v >= -1e-9 && v <= 0.5 + 1e-9)
            return {std::min(0.5, std::max(0.0, v)), false};
    } catch (const NonConvergenceError&) {
    } catch (const std::domain_error&) {
    }
    OutageRequest req{cfg, ChannelParams{fso}, rf, OutageForm::asymptotic};
    return {dpsk_ber_quadrature([&](double g) { return outage_ne(req, g); }), true};
}

}  // namespace fsorf
