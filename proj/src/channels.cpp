#include "fsorf/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fsorf/quadrature.hpp"

namespace fsorf {

namespace {

// Above this Meijer-G argument the Slater sum cancels exponentially
// (rel. error ~ e^{4 sqrt(w)} eps); the far tail switches to the exact
// product-Gamma Bessel-integral route instead.
constexpr double kTailSwitchArg = 25.0;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// density of the product of two unit-mean Gamma variates (shapes a and b):
// f(y) = 2 (ab)^{(a+b)/2} y^{(a+b)/2 - 1} K_{a-b}(2 sqrt(ab y)) / (G(a) G(b))
double log_product_gamma_pdf(double a, double b, double y) {
    const double arg = 2.0 * std::sqrt(a * b * y);
    const double k = bessel_k(a - b, arg);
    if (k <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(2.0) + 0.5 * (a + b) * std::log(a * b) +
           (0.5 * (a + b) - 1.0) * std::log(y) + std::log(k) -
           ln_gamma(a).log - ln_gamma(b).log;
}

// P(I_a I_p > x) with I_p = U^{1/xi2}: conditioning on I_a = y gives
// P(I_p > x/y) = 1 - (x/y)^{xi2} for y > x
double gg_tail_complement(const GammaGammaPointingParams& p, double x) {
    const double xi2 = p.xi2();
    const double w = p.alpha * p.beta * x;   // f_a decay scale: e^{-2 sqrt(w e^s)}
    const double smax = 50.0 / std::max(1.0, std::sqrt(w)) + 2.0 / xi2;
    auto f = [&](double s) {
        const double y = x * std::exp(s);
        const double lg = log_product_gamma_pdf(p.alpha, p.beta, y);
        const double frac = -std::expm1(-xi2 * s);   // 1 - (x/y)^{xi2}
        return std::exp(lg + s) * frac * x;
    };
    return integrate(f, 0.0, smax, 1e-16, 1e-10);
}

// pdf of gamma = mean_snr (I/kappa)^2 in the far tail:
// f(g) = (xi2 x / (2 g)) int_0^inf f_a(x e^s) e^{-(xi2 - 1) s} ds
double gg_tail_pdf(const GammaGammaPointingParams& p, double gamma) {
    const double xi2 = p.xi2();
    const double x = p.kappa() * std::sqrt(gamma / p.mean_snr);
    const double w = p.alpha * p.beta * x;
    const double smax = 50.0 / (xi2 - 1.0 + std::sqrt(w)) + 50.0 / std::max(1.0, w);
    auto f = [&](double s) {
        const double lg = log_product_gamma_pdf(p.alpha, p.beta, x * std::exp(s));
        return std::exp(lg - (xi2 - 1.0) * s);
    };
    const double integral = integrate(f, 0.0, smax, 1e-300, 1e-10);
    return xi2 * x / (2.0 * gamma) * integral;
}

}  // namespace

double NegExpParams::theta() const { return lambda / std::sqrt(mean_snr); }

void validate(const GammaGammaPointingParams& p) {
    if (!(p.alpha > 0) || !(p.beta > 0) || !(p.xi > 0) || !(p.mean_snr > 0))
        throw std::domain_error("GammaGammaPointingParams: all fields must be positive");
}

void validate(const NegExpParams& p) {
    if (!(p.lambda > 0) || !(p.mean_snr > 0))
        throw std::domain_error("NegExpParams: all fields must be positive");
}

void validate(const RayleighParams& p) {
    if (!(p.mean_snr > 0))
        throw std::domain_error("RayleighParams: mean_snr must be positive");
}

double gg_pe_pdf(const GammaGammaPointingParams& p, double gamma) {
    validate(p);
    if (!(gamma > 0)) throw std::domain_error("gg_pe_pdf: gamma must be positive");
    const double xi2 = p.xi2();
    const double w = p.alpha * p.beta * p.kappa() * std::sqrt(gamma / p.mean_snr);
    if (w >= kTailSwitchArg) return gg_tail_pdf(p, gamma);
    MeijerGSpec s;
    s.m = 3; s.n = 0; s.p = 1; s.q = 3;
    s.a = {xi2 + 1.0};
    s.b = {xi2, p.alpha, p.beta};
    s.z = w;
    const double g = meijer_g(s);
    const double pre = xi2 / (2.0 * std::tgamma(p.alpha) * std::tgamma(p.beta) * gamma);
    return std::max(0.0, pre * g);
}

namespace {

double gg_cdf_meijer(const GammaGammaPointingParams& p, double gamma) {
    const double xi2 = p.xi2();
    const double w = p.alpha * p.beta * p.kappa() * std::sqrt(gamma / p.mean_snr);
    if (w >= kTailSwitchArg)
        return clamp01(1.0 - gg_tail_complement(p, p.kappa() * std::sqrt(gamma / p.mean_snr)));
    MeijerGSpec s;
    s.m = 3; s.n = 1; s.p = 2; s.q = 4;
    s.a = {1.0, xi2 + 1.0};
    s.b = {xi2, p.alpha, p.beta, 0.0};
    s.z = w;
    const double g = meijer_g(s);
    return clamp01(xi2 / (std::tgamma(p.alpha) * std::tgamma(p.beta)) * g);
}

SeriesCdfCoeffs coeffs_raw(double alpha, double beta, double xi2, double ab,
                           int n_max) {
    SeriesCdfCoeffs c;
    c.alpha = alpha; c.beta = beta; c.xi2 = xi2;
    const auto lg = [](double x) { return ln_gamma(x); };

    // X0 = G(a-x2) G(b-x2) / (G(a) G(b)) (ab kappa)^x2, assembled in log space
    {
        auto g1 = lg(alpha - xi2), g2 = lg(beta - xi2), g3 = lg(alpha), g4 = lg(beta);
        const double L = g1.log + g2.log - g3.log - g4.log + xi2 * std::log(ab);
        c.x0 = g1.sign * g2.sign * g3.sign * g4.sign * std::exp(L);
    }
    // leading Y0, Z0 in log space, then the term recurrence
    auto family = [&](double u, double v) {
        // u-lattice coefficients with the companion exponent v:
        // C_n = xi2 G(x2-u) G(v-u) (u-x2)_n (ab)^{n+u} /
        //       ((n+u) G(a) G(b) G(x2+1-u) (1-x2+u)_n (1-v+u)_n n!)
        std::vector<double> out(n_max + 1);
        auto g1 = lg(xi2 - u), g2 = lg(v - u), g3 = lg(alpha), g4 = lg(beta),
             g5 = lg(xi2 + 1.0 - u);
        const double L0 = std::log(xi2) + g1.log + g2.log - std::log(u) - g3.log -
                          g4.log - g5.log + u * std::log(ab);
        double cur = g1.sign * g2.sign * g3.sign * g4.sign * g5.sign * std::exp(L0);
        out[0] = cur;
        for (int n = 0; n < n_max; ++n) {
            cur *= (u - xi2 + n) * ab * (n + u) /
                   ((n + 1 + u) * (1.0 - xi2 + u + n) * (1.0 - v + u + n) * (n + 1));
            out[n + 1] = cur;
        }
        return out;
    };
    c.y = family(alpha, beta);
    c.z = family(beta, alpha);
    return c;
}

bool xi_alpha_beta_collide(double alpha, double beta, double xi2) {
    auto near_int = [](double x) {
        return std::fabs(x - std::nearbyint(x)) < 1e-3 && std::fabs(x) < 1e9;
    };
    return near_int(xi2 - alpha) || near_int(xi2 - beta) || near_int(alpha - beta);
}

}  // namespace

double series_cdf_value(const SeriesCdfCoeffs& c, double r) {
    const long double s = std::sqrt((long double)r);
    long double sum = (long double)c.x0 * std::pow(s, c.xi2);
    long double py = std::pow(s, c.alpha), pz = std::pow(s, c.beta);
    for (size_t n = 0; n < c.y.size(); ++n) {
        sum += c.y[n] * py + c.z[n] * pz;
        py *= s;
        pz *= s;
    }
    return (double)sum;
}

SeriesCdfCoeffs series_cdf_coeffs(const GammaGammaPointingParams& p, int n_max) {
    validate(p);
    if (n_max < 20) n_max = 20;
    const double xi2 = p.xi2();
    if (xi_alpha_beta_collide(p.alpha, p.beta, xi2))
        throw std::domain_error(
            "series_cdf_coeffs: xi^2, alpha, beta collide; use the meijerg method");
    return coeffs_raw(p.alpha, p.beta, xi2, p.alpha * p.beta * p.kappa(), n_max);
}

double gg_pe_cdf(const GammaGammaPointingParams& p, double gamma, GgCdfMethod method) {
    validate(p);
    if (gamma < 0) throw std::domain_error("gg_pe_cdf: gamma must be non-negative");
    if (gamma == 0) return 0.0;
    if (method == GgCdfMethod::meijerg) return gg_cdf_meijer(p, gamma);

    const double xi2 = p.xi2();
    const double w = p.alpha * p.beta * p.kappa() * std::sqrt(gamma / p.mean_snr);
    if (w >= kTailSwitchArg)
        return clamp01(1.0 - gg_tail_complement(p, p.kappa() * std::sqrt(gamma / p.mean_snr)));
    const double r = gamma / p.mean_snr;
    const double ab = p.alpha * p.beta * p.kappa();
    if (!xi_alpha_beta_collide(p.alpha, p.beta, xi2))
        return clamp01(series_cdf_value(coeffs_raw(p.alpha, p.beta, xi2, ab, 64), r));
    // perturb the colliding shape parameters, Richardson extrapolate
    const double eps = 0x1p-16;
    auto at = [&](double d) {
        return series_cdf_value(
            coeffs_raw(p.alpha + d, p.beta + 2.0 * d, xi2 + 3.0 * d, ab, 64), r);
    };
    const double s1 = 0.5 * (at(eps) + at(-eps));
    const double s2 = 0.5 * (at(2 * eps) + at(-2 * eps));
    return clamp01((4.0 * s1 - s2) / 3.0);
}

double ne_cdf(const NegExpParams& p, double gamma, NeCdfMethod method) {
    validate(p);
    if (gamma < 0) throw std::domain_error("ne_cdf: gamma must be non-negative");
    if (gamma == 0) return 0.0;
    if (method == NeCdfMethod::exact)
        return -std::expm1(-p.lambda * std::sqrt(gamma / p.mean_snr));
    return std::min(1.0, p.theta() * std::sqrt(gamma));
}

double rayleigh_cdf(const RayleighParams& p, double gamma) {
    validate(p);
    if (gamma < 0) throw std::domain_error("rayleigh_cdf: gamma must be non-negative");
    return -std::expm1(-gamma / p.mean_snr);
}

double sample_snr(const ChannelParams& ch, RngStream& rng) {
    struct Visitor {
        RngStream& rng;
        double operator()(const RayleighParams& p) const {
            return rng.exponential(p.mean_snr);
        }
        double operator()(const NegExpParams& p) const {
            // irradiance I ~ Exp(rate lambda); gamma = mean_snr I^2 inverts the CDF exactly
            const double irr = rng.exponential(1.0 / p.lambda);
            return p.mean_snr * irr * irr;
        }
        double operator()(const GammaGammaPointingParams& p) const {
            const double ia = rng.gamma_unit_mean(p.alpha) * rng.gamma_unit_mean(p.beta);
            const double ip = std::pow(rng.uniform(), 1.0 / p.xi2());
            const double irr = ia * ip / p.kappa();   // unit-mean combined irradiance
            return p.mean_snr * irr * irr;
        }
    };
    return std::visit(Visitor{rng}, ch);
}

std::pair<double, double> turbulence_params_from_rytov(double rytov_var) {
    if (!(rytov_var > 0))
        throw std::domain_error("turbulence_params_from_rytov: rytov_var must be positive");
    const double s125 = std::pow(rytov_var, 1.2);   // sigma_R^(12/5)
    const double alpha =
        1.0 / std::expm1(0.49 * rytov_var / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0));
    const double beta =
        1.0 / std::expm1(0.51 * rytov_var / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0));
    return {alpha, beta};
}

}  // namespace fsorf
