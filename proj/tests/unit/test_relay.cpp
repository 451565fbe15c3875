#include <doctest.h>

#include <cmath>

#include "fsorf/presets.hpp"
#include "fsorf/quadrature.hpp"
#include "fsorf/relay.hpp"

using namespace fsorf;

namespace {
double rel(double got, double ref) { return std::fabs(got - ref) / std::fabs(ref); }
}

TEST_CASE("sc_cdf") {
    RayleighParams p{5.0};
    CHECK(sc_cdf(p, 1, 3.0) == doctest::Approx(rayleigh_cdf(p, 3.0)).epsilon(1e-15));
    CHECK(rel(sc_cdf(p, 2, 5.0), std::pow(1.0 - std::exp(-1.0), 2)) < 1e-14);
    // stochastic dominance in N
    for (double g : {0.5, 2.0, 5.0, 20.0}) {
        CHECK(sc_cdf(p, 4, g) <= sc_cdf(p, 2, g));
        CHECK(sc_cdf(p, 2, g) <= sc_cdf(p, 1, g));
    }
    CHECK_THROWS_AS(sc_cdf(p, 0, 1.0), std::domain_error);
}

TEST_CASE("sc_pdf") {
    RayleighParams p{5.0};
    CHECK(rel(sc_pdf(p, 1, 2.0), std::exp(-0.4) / 5.0) < 1e-14);
    const double mass = integrate(
        [&](double g) { return g > 0 ? sc_pdf(p, 3, g) : 0.0; }, 0.0, 200.0, 1e-12,
        1e-11);
    CHECK(std::fabs(mass - 1.0) < 1e-8);
    const double h = 1e-5 * p.mean_snr;
    const double fd = (sc_cdf(p, 3, p.mean_snr + h) - sc_cdf(p, 3, p.mean_snr - h)) /
                      (2.0 * h);
    CHECK(rel(fd, sc_pdf(p, 3, p.mean_snr)) < 1e-6);
}

TEST_CASE("alternating binomial identity sum_k C(N-1,k)(-1)^k/(k+1) = 1/N") {
    for (int N = 1; N <= 8; ++N) {
        double s = 0.0;
        double c = 1.0;   // C(N-1, k) by recurrence
        for (int k = 0; k < N; ++k) {
            s += ((k & 1) ? -1.0 : 1.0) * c / (k + 1);
            c = c * (N - 1 - k) / (k + 1);
        }
        CHECK(rel(s, 1.0 / N) < 1e-13);
    }
}

TEST_CASE("af_relay_cdf: frozen references at 25 dB") {
    LinkConfig link;   // N = 2, C = 1
    const double snr = db_to_linear(25.0);
    const RayleighParams rf{snr};
    CHECK(rel(af_relay_cdf(AfBranch::gg, link, moderate_regime(snr), rf, 10.0),
              0.00199186210621708750) < 1e-8);
    CHECK(rel(af_relay_cdf(AfBranch::ne, link, saturate_regime(snr), rf, 10.0),
              0.0116882726269276573) < 1e-8);
    CHECK(rel(af_relay_cdf(AfBranch::rf, link, RayleighParams{snr}, rf, 10.0),
              0.00115362661246647878) < 1e-8);
    // N = 1 spec point
    LinkConfig l1 = link;
    l1.n_antennas = 1;
    CHECK(rel(af_relay_cdf(AfBranch::rf, l1, RayleighParams{10.0}, {10.0}, 1.0),
              0.135704267076350510) < 1e-8);
}

TEST_CASE("af_relay_cdf equals the defining-integral quadrature") {
    LinkConfig link;
    link.n_antennas = 4;   // exercises the alternating binomial machinery
    const double snr = db_to_linear(25.0);
    const RayleighParams rf{snr};
    struct Case { AfBranch b; ChannelParams ch; } cases[] = {
        {AfBranch::gg, moderate_regime(snr)},
        {AfBranch::gg, strong_regime(snr)},
        {AfBranch::ne, saturate_regime(snr)},
        {AfBranch::rf, RayleighParams{snr}},
    };
    for (const auto& c : cases)
        for (double frac : {0.05, 0.5, 1.5}) {
            const double g = frac * snr;
            CHECK(rel(af_relay_cdf(c.b, link, c.ch, rf, g),
                      af_relay_cdf_quadrature(c.b, link, c.ch, rf, g)) < 1e-5);
        }
}

TEST_CASE("af_relay_cdf: edge and monotonicity properties") {
    LinkConfig link;
    const double snr = db_to_linear(20.0);
    const RayleighParams rf{snr};
    const ChannelParams chs[] = {ChannelParams{moderate_regime(snr)},
                                 ChannelParams{saturate_regime(snr)},
                                 ChannelParams{RayleighParams{snr}}};
    const AfBranch brs[] = {AfBranch::gg, AfBranch::ne, AfBranch::rf};
    for (int i = 0; i < 3; ++i) {
        CHECK(af_relay_cdf(brs[i], link, chs[i], rf, 0.0) == 0.0);
        double prev = -1.0;
        for (double g = 1.0; g < 500.0; g *= 1.9) {
            const double v = af_relay_cdf(brs[i], link, chs[i], rf, g);
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            // AF end-to-end SNR <= gamma1 a.s., so its CDF dominates the SC CDF
            CHECK(v >= sc_cdf(rf, link.n_antennas, g) - 1e-12);
            prev = v;
        }
    }
    // non-increasing in mean SNR
    for (int i = 0; i < 3; ++i) {
        const double snr2 = db_to_linear(23.0);
        const RayleighParams rf2{snr2};
        const ChannelParams chs2[] = {ChannelParams{moderate_regime(snr2)},
                                      ChannelParams{saturate_regime(snr2)},
                                      ChannelParams{RayleighParams{snr2}}};
        for (double g : {3.0, 10.0, 30.0})
            CHECK(af_relay_cdf(brs[i], link, chs2[i], rf2, g) <=
                  af_relay_cdf(brs[i], link, chs[i], rf, g));
    }
}

TEST_CASE("opportunistic_cdf") {
    CHECK(opportunistic_cdf(0.0, 0.7) == 0.0);
    CHECK(opportunistic_cdf(1.0, 1.0) == 1.0);
    CHECK(opportunistic_cdf(0.5, 0.5) == 0.25);
    CHECK_THROWS_AS(opportunistic_cdf(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(opportunistic_cdf(0.5, 1.5), std::domain_error);
}
