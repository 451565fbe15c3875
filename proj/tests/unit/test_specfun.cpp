#include <doctest.h>

#include <cmath>
#include <vector>

#include "fsorf/specfun.hpp"

using namespace fsorf;

namespace {

double rel(double got, double ref) { return std::fabs(got - ref) / std::fabs(ref); }

MeijerGSpec spec(int m, int n, std::vector<double> a, std::vector<double> b, double z) {
    MeijerGSpec s;
    s.m = m; s.n = n;
    s.p = (int)a.size(); s.q = (int)b.size();
    s.a = std::move(a); s.b = std::move(b);
    s.z = z;
    return s;
}

constexpr double kXi2Mod = 10.45 * 10.45;
constexpr double kXi2Str = 2.45 * 2.45;

}  // namespace

TEST_CASE("ln_gamma: known values and signs") {
    CHECK(rel(std::exp(ln_gamma(5.0).log), 24.0) < 1e-14);
    CHECK(rel(std::exp(ln_gamma(0.5).log), 1.772453850905516027) < 1e-13);
    CHECK(rel(std::exp(ln_gamma(1.9).log), 0.9617658319073874194) < 1e-13);
    CHECK(ln_gamma(1.9).sign == 1);
    CHECK(ln_gamma(-0.5).sign == -1);   // Gamma(-0.5) = -2 sqrt(pi)
    CHECK(ln_gamma(-1.5).sign == 1);
    CHECK(rel(std::exp(ln_gamma(-1.5).log), 4.0 * std::sqrt(M_PI) / 3.0) < 1e-12);
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-3.0), std::domain_error);
}

TEST_CASE("ln_gamma: relative accuracy across [0.1, 50]") {
    // against the product recurrence from a midpoint anchor
    for (double x : {0.1, 0.37, 1.0, 2.5, 7.3, 19.0, 50.0}) {
        const double direct = std::exp(ln_gamma(x + 3.0).log);
        const double stepped = std::exp(ln_gamma(x).log) * x * (x + 1.0) * (x + 2.0);
        CHECK(rel(direct, stepped) < 1e-13);
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.7, 0) == 1.0);
    CHECK(pochhammer(-12.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == 360.0);
    CHECK(pochhammer(-2.5, 3) == doctest::Approx(-1.875).epsilon(1e-15));
    CHECK_THROWS_AS(pochhammer(1.0, -1), std::invalid_argument);
}

TEST_CASE("bessel_k: frozen high-precision references") {
    struct P { double nu, x, ref; };
    const P pts[] = {
        {0.0, 0.001, 7.02368880056238134},
        {0.5, 1.0, 0.461068504447894558},
        {1.0, 2.0, 0.139865881816522427},
        {1.7, 0.35, 8.45534114200622332},
        {3.3, 7.7, 3.89375637934683874e-4},
        {5.0, 50.0, 4.36718225410098633e-23},
        {4.1, 0.02, 5.39846565367539077e8},
        {2.0, 30.0, 2.27699296325582633e-14},
        {0.0, 20.0, 5.74123781533652429e-10},
    };
    for (const auto& p : pts) CHECK(rel(bessel_k(p.nu, p.x), p.ref) < 1e-10);
    // symmetry in the order
    CHECK(rel(bessel_k(-1.7, 0.35), bessel_k(1.7, 0.35)) < 1e-14);
    // half-integer closed form
    CHECK(rel(bessel_k(0.5, 1.0), std::sqrt(M_PI / 2.0) * std::exp(-1.0)) < 1e-13);
    // large-x asymptote within 1%
    const double asym = std::sqrt(M_PI / 40.0) * std::exp(-20.0);
    CHECK(std::fabs(bessel_k(0.0, 20.0) / asym - 1.0) < 0.01);
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(1.0, -2.0), std::domain_error);
}

TEST_CASE("bessel_k agrees with the standard library spot-check") {
    for (auto [nu, x] : {std::pair{0.3, 0.7}, {2.2, 5.0}, {4.9, 12.0}})
        CHECK(rel(bessel_k(nu, x), std::cyl_bessel_k(nu, x)) < 1e-9);
}

TEST_CASE("hyp_pfq: identities and frozen values") {
    CHECK(rel(hyp_pfq({}, {}, 1.0), std::exp(1.0)) < 1e-13);
    for (double z : {-5.0, -1.0, 0.3, 2.0, 5.0})
        CHECK(rel(hyp_pfq({}, {}, z), std::exp(z)) < 1e-13);
    const double a1[] = {2.0};
    CHECK(rel(hyp_pfq(a1, {}, 0.5, SeriesAccuracy{1e-15, 2000}), 4.0) < 1e-13);
    const double a2[] = {0.8}, b2[] = {1.3, 2.1};
    CHECK(hyp_pfq(a2, b2, 0.0) == 1.0);
    const double a3[] = {0.5}, b3[] = {1.2, 2.3};
    CHECK(rel(hyp_pfq(a3, b3, 1.7), 1.368015358764430216) < 1e-12);
    const double a4[] = {1.1, 0.4}, b4[] = {0.9, 1.7, 2.2};
    CHECK(rel(hyp_pfq(a4, b4, -3.5), 0.661491608896250036) < 1e-12);
    // terminating numerator beats the lower-parameter pole
    const double a5[] = {-2.0}, b5[] = {-5.0};
    CHECK(std::isfinite(hyp_pfq(a5, b5, 1.0)));
    const double b6[] = {-3.0};
    CHECK_THROWS_AS(hyp_pfq({}, b6, 1.0), std::domain_error);
    SeriesAccuracy tight{1e-12, 4};
    CHECK_THROWS_AS(hyp_pfq({}, {}, 30.0, tight), NonConvergenceError);
}

TEST_CASE("meijer_g: exponential identity") {
    for (double z : {0.01, 0.1, 1.0, 10.0})
        CHECK(rel(meijer_g(spec(1, 0, {}, {0.0}, z)), std::exp(-z)) < 1e-12);
}

TEST_CASE("meijer_g: Bessel-K identity (integer-spaced poles)") {
    for (double z : {1e-3, 0.01, 0.1, 1.0, 10.0}) {
        const double ref = 2.0 * std::sqrt(z) * bessel_k(1.0, 2.0 * std::sqrt(z));
        CHECK(rel(meijer_g(spec(2, 0, {}, {1.0, 0.0}, z)), ref) < 1e-10);
    }
    // general order: G^{2,0}_{0,2}(z | -; b1, b2) = 2 z^((b1+b2)/2) K_{b1-b2}(2 sqrt z)
    for (auto [b1, b2] : {std::pair{0.7, 0.2}, {1.5, -0.5}, {2.0, 0.0}}) {
        for (double z : {0.05, 0.8, 4.0}) {
            const double ref = 2.0 * std::pow(z, 0.5 * (b1 + b2)) *
                               bessel_k(b1 - b2, 2.0 * std::sqrt(z));
            CHECK(rel(meijer_g(spec(2, 0, {}, {b1, b2}, z)), ref) < 1e-10);
        }
    }
}

TEST_CASE("meijer_g: frozen instances from the channel formulas") {
    // DF-hop CDF kernels
    CHECK(rel(meijer_g(spec(3, 1, {1.0, kXi2Mod + 1.0}, {kXi2Mod, 4.0, 1.9, 0.0}, 7.453)),
              0.0335845455142653687) < 1e-9);
    CHECK(rel(meijer_g(spec(3, 1, {1.0, kXi2Str + 1.0}, {kXi2Str, 4.2, 1.4, 0.0}, 4.32)),
              0.684164057303105549) < 1e-9);
    // AF-stage kernels (moderate has the {1, alpha/2} collision)
    CHECK(rel(meijer_g(spec(6, 1, {1.0, (kXi2Mod + 2) / 2},
                            {1.0, kXi2Mod / 2, 2.0, 2.5, 0.95, 1.45, 0.0}, 0.3545)),
              0.00720414755402048795) < 1e-9);
    CHECK(rel(meijer_g(spec(6, 1, {1.0, (kXi2Str + 2) / 2},
                            {1.0, kXi2Str / 2, 2.1, 2.6, 0.7, 1.2, 0.0}, 0.2)),
              0.236558769689762784) < 1e-10);
    CHECK(rel(meijer_g(spec(3, 0, {}, {1.0, 0.0, 0.5}, 0.25)),
              0.519553659478620270) < 1e-10);
    CHECK(rel(meijer_g(spec(2, 1, {-2.45}, {1.0, 0.0}, 0.05)),
              2.17619263440690680) < 1e-10);
    CHECK(rel(meijer_g(spec(3, 1, {-0.5}, {1.0, 0.0, 0.5}, 0.04)),
              0.872171761829661553) < 1e-10);
    CHECK(rel(meijer_g(spec(6, 2, {-3.1, 1.0, (kXi2Mod + 2) / 2},
                            {1.0, kXi2Mod / 2, 2.0, 2.5, 0.95, 1.45, 0.0}, 0.02)),
              0.0223986762663363696) < 1e-9);
}

TEST_CASE("meijer_g: redundant parameter pairs cancel (unreduced form)") {
    // G^{7,2}_{4,9} with (xi2+1)/2 in both groups and 1/2 in the n/q groups
    // reduces exactly to the G^{6,1}_{2,7} kernel
    const double x = 0.3545;
    const double lit = meijer_g(spec(
        7, 2, {1.0, 0.5, (kXi2Mod + 2) / 2, (kXi2Mod + 1) / 2},
        {1.0, (kXi2Mod + 1) / 2, kXi2Mod / 2, 2.5, 2.0, 1.45, 0.95, 0.5, 0.0}, x));
    const double red = meijer_g(spec(6, 1, {1.0, (kXi2Mod + 2) / 2},
                                     {1.0, kXi2Mod / 2, 2.0, 2.5, 0.95, 1.45, 0.0}, x));
    CHECK(rel(lit, red) < 1e-11);
}

TEST_CASE("meijer_g: inversion identity round trip and |z| = 1") {
    // G^{1,1}_{1,1}(z | 1; 1) = z / (1 + z)
    CHECK(rel(meijer_g(spec(1, 1, {1.0}, {1.0}, 0.5)), 0.5 / 1.5) < 1e-12);
    CHECK(rel(meijer_g(spec(1, 1, {1.0}, {1.0}, 2.0)), 2.0 / 3.0) < 1e-12);
    // hand-inverted spec evaluates to the same value
    const double direct = meijer_g(spec(1, 1, {0.3}, {-0.2}, 0.4));
    const double inverted = meijer_g(spec(1, 1, {1.0 - (-0.2)}, {1.0 - 0.3}, 2.5));
    CHECK(rel(direct, inverted) < 1e-8);
    // at exactly z = 1 this G has no convergent residue route on either side
    CHECK_THROWS_AS(meijer_g(spec(1, 1, {1.0}, {1.0}, 1.0)), NonConvergenceError);
    // a boundary case with enough decay converges loosely and averages
    SeriesAccuracy loose{1e-4, 4000};
    const double ref = std::tgamma(-0.5) * std::pow(2.0, 0.5);
    CHECK(rel(meijer_g(spec(1, 1, {0.2}, {-1.3}, 1.0), loose), ref) < 1e-2);
}

TEST_CASE("meijer_g: truncation self-consistency") {
    for (double tol : {1e-8, 1e-10}) {
        SeriesAccuracy a1{tol, 500}, a2{tol / 2.0, 500};
        const auto s = spec(6, 1, {1.0, (kXi2Mod + 2) / 2},
                            {1.0, kXi2Mod / 2, 2.0, 2.5, 0.95, 1.45, 0.0}, 0.8);
        const double v1 = meijer_g(s, a1), v2 = meijer_g(s, a2);
        CHECK(std::fabs(v1 - v2) <= tol * std::fabs(v1) + 1e-300);
    }
}

TEST_CASE("meijer_g: input validation") {
    CHECK_THROWS_AS(meijer_g(spec(2, 0, {}, {1.0, 0.0}, -1.0)), std::invalid_argument);
    CHECK_THROWS_AS(meijer_g(spec(2, 0, {}, {1.0}, 1.0)), std::invalid_argument);
    MeijerGSpec bad = spec(1, 0, {}, {0.0}, 1.0);
    bad.m = 5;
    CHECK_THROWS_AS(meijer_g(bad), std::invalid_argument);
}

TEST_CASE("bivariate_meijer_g: frozen quadrature references") {
    const auto g02 = spec(2, 0, {}, {1.0, 0.0}, 1.0);
    const auto g03 = spec(3, 0, {}, {1.0, 0.0, 0.5}, 1.0);
    const double outer_ne[] = {-0.5};   // Gamma(1.5 + s + t)
    CHECK(rel(bivariate_meijer_g(outer_ne, g02, g03, 0.05, 0.08),
              0.611028033956271027) < 1e-8);
    const auto g79s = spec(6, 1, {1.0, (kXi2Str + 2) / 2},
                           {1.0, kXi2Str / 2, 2.1, 2.6, 0.7, 1.2, 0.0}, 1.0);
    const double outer_gg[] = {-2.45};  // Gamma(3.45 + s + t)
    CHECK(rel(bivariate_meijer_g(outer_gg, g02, g79s, 0.03, 0.02),
              0.350379856109500127) < 1e-7);
}

TEST_CASE("bivariate_meijer_g: degenerate second argument collapses") {
    // as z2 -> 0 the second kernel contributes its leading constant sqrt(pi)
    // and the double series collapses to Gamma-weighted kernel 1 alone
    const auto g02 = spec(2, 0, {}, {1.0, 0.0}, 1.0);
    const auto g03 = spec(3, 0, {}, {1.0, 0.0, 0.5}, 1.0);
    const double outer[] = {-0.5};
    const double collapsed = bivariate_meijer_g(outer, g02, g03, 0.05, 1e-12);
    const double single = std::sqrt(M_PI) * meijer_g(spec(2, 1, {-0.5}, {1.0, 0.0}, 0.05));
    CHECK(rel(collapsed, single) < 1e-5);
}
