#include <doctest.h>

#include <cmath>

#include "fsorf/ber.hpp"
#include "fsorf/outage.hpp"
#include "fsorf/presets.hpp"
#include "fsorf/quadrature.hpp"

using namespace fsorf;

namespace {
double rel(double got, double ref) { return std::fabs(got - ref) / std::fabs(ref); }
}

TEST_CASE("series_integer_power: basics") {
    GeneralizedPowerSeries one_plus_x{{{0.0, 1.0}, {1.0, 1.0}}};
    const auto sq = series_integer_power(one_plus_x, 2, 100);
    REQUIRE(sq.terms.size() == 3);
    CHECK(sq.terms[0] == std::pair{0.0, 1.0});
    CHECK(sq.terms[1].second == doctest::Approx(2.0));
    CHECK(sq.terms[2].second == doctest::Approx(1.0));
    const auto empty_power = series_integer_power(one_plus_x, 0, 100);
    REQUIRE(empty_power.terms.size() == 1);
    CHECK(empty_power.terms[0] == std::pair{0.0, 1.0});
    CHECK_THROWS_AS(series_integer_power(one_plus_x, -1, 10), std::invalid_argument);
}

TEST_CASE("series_integer_power: associativity pow(s, a+b) = pow(s,a) pow(s,b)") {
    GeneralizedPowerSeries s;
    for (int i = 0; i < 6; ++i)
        s.terms.emplace_back(0.5 * i, std::cos(1.7 * i + 0.3));
    const int nmax = 4000;
    const auto lhs = series_integer_power(s, 5, nmax);
    const auto rhs =
        series_multiply(series_integer_power(s, 2, nmax), series_integer_power(s, 3, nmax), nmax);
    REQUIRE(lhs.terms.size() == rhs.terms.size());
    for (size_t i = 0; i < lhs.terms.size(); ++i) {
        CHECK(std::fabs(lhs.terms[i].first - rhs.terms[i].first) < 1e-9);
        CHECK(std::fabs(lhs.terms[i].second - rhs.terms[i].second) < 1e-11);
    }
}

TEST_CASE("dpsk_ber_quadrature: closed-form checks") {
    CHECK(rel(dpsk_ber_quadrature([](double) { return 1.0; }), 0.5) < 1e-9);
    CHECK(dpsk_ber_quadrature([](double) { return 0.0; }) == 0.0);
    const double snr = 10.0;
    auto single_rayleigh = [&](double g) { return -std::expm1(-g / snr); };
    const double pe = dpsk_ber_quadrature(single_rayleigh);
    CHECK(rel(pe, 1.0 / 22.0) < 1e-10);
    // P_e = 1/2 - (1/2) int e^-g (1 - F(g)) dg, both routes to 1e-12
    const double compl_route =
        0.5 - 0.5 * integrate([&](double g) {
            return std::exp(-g) * (1.0 - single_rayleigh(g));
        }, 0.0, 60.0, 1e-14, 1e-12);
    CHECK(std::fabs(pe - compl_route) < 1e-12);
}

TEST_CASE("dpsk_ber_gg_exact agrees with the quadrature route at 20 dB") {
    LinkConfig link;
    const double snr = db_to_linear(20.0);
    for (const char* regime : {"moderate", "strong"}) {
        const auto p = std::get<GammaGammaPointingParams>(regime_channel(regime, snr));
        OutageRequest req{link, ChannelParams{p}, RayleighParams{snr}, OutageForm::exact};
        const double quad =
            dpsk_ber_quadrature([&](double g) { return outage_gg(req, g); });
        const BerResult closed = dpsk_ber_gg_exact(link, p, {snr});
        CHECK_FALSE(closed.used_fallback);
        CHECK(rel(closed.value, quad) < 1e-4);
        // frozen anchors (quadrature of the exact outage)
        if (std::string(regime) == "moderate")
            CHECK(rel(quad, 3.21551995400828e-4) < 1e-5);
        else
            CHECK(rel(quad, 5.07131978094778e-4) < 1e-5);
    }
}

TEST_CASE("dpsk_ber_ne_asymptotic: two routes to the same object") {
    LinkConfig link;
    const double snr = db_to_linear(20.0);
    const NegExpParams p = saturate_regime(snr);
    OutageRequest req{link, ChannelParams{p}, RayleighParams{snr},
                      OutageForm::asymptotic};
    const double quad = dpsk_ber_quadrature([&](double g) { return outage_ne(req, g); });
    const BerResult closed = dpsk_ber_ne_asymptotic(link, p, {snr});
    CHECK_FALSE(closed.used_fallback);
    CHECK(rel(closed.value, quad) < 1e-6);
    CHECK(rel(quad, 6.59507045615784e-4) < 1e-5);
}

TEST_CASE("BER direction checks") {
    LinkConfig link;
    const double snr = db_to_linear(20.0);
    // deeper relative fades (larger lambda) must raise the BER; confirmed in
    // both the asymptotic closed form and the exact quadrature route
    const BerResult b1 = dpsk_ber_ne_asymptotic(link, {1.0, snr}, {snr});
    const BerResult b2 = dpsk_ber_ne_asymptotic(link, {2.0, snr}, {snr});
    CHECK(b2.value > b1.value);
    auto exact_ber = [&](double lambda) {
        OutageRequest req{link, ChannelParams{NegExpParams{lambda, snr}},
                          RayleighParams{snr}, OutageForm::exact};
        return dpsk_ber_quadrature([&](double g) { return outage_ne(req, g); });
    };
    CHECK(exact_ber(2.0) > exact_ber(1.0));
    // monotone decreasing in mean SNR, and always in [0, 1/2]
    double prev = 0.51;
    for (double db = 10.0; db <= 30.0; db += 4.0) {
        const double s = db_to_linear(db);
        OutageRequest req{link, ChannelParams{moderate_regime(s)}, RayleighParams{s},
                          OutageForm::exact};
        const double pe = dpsk_ber_quadrature([&](double g) { return outage_gg(req, g); });
        CHECK(pe > 0.0);
        CHECK(pe <= 0.5);
        CHECK(pe < prev);
        prev = pe;
    }
}
