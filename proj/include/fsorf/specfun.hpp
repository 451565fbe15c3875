#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace fsorf {

/// Truncation control for all series evaluators.
struct SeriesAccuracy {
    double rel_tol = 1e-12;
    int max_terms = 500;
};

/// Thrown when a series fails to meet rel_tol within max_terms, or when a
/// pole collision cannot be resolved by parameter perturbation.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Meijer G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q), positive real argument.
/// a holds the p upper parameters (first n of them in the "numerator" group),
/// b the q lower parameters (first m in the pole group).
struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;
    std::vector<double> b;
    double z = 1.0;
};

/// log|Gamma(x)| together with the sign of Gamma(x).
struct SignedLogGamma {
    double log;
    int sign;   // +1 or -1; 0 reserved for poles (never returned, poles throw)
};

/// Natural log of |Gamma(x)| plus sign flag. Throws std::domain_error at the
/// poles x = 0, -1, -2, ...
SignedLogGamma ln_gamma(double x);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
double pochhammer(double x, int n);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
/// Temme's series for small x, Thompson-Barnett continued fraction otherwise.
double bessel_k(double nu, double x);

/// Generalized hypergeometric series pFq(a; b; z) by direct summation.
/// Throws NonConvergenceError if max_terms is reached, std::domain_error if a
/// lower parameter is a non-positive integer not cancelled by termination.
double hyp_pfq(std::span<const double> a, std::span<const double> b, double z,
               const SeriesAccuracy& acc = {});

/// Meijer-G evaluation via the Slater pole-residue expansion.
///
/// Parameter pairs that are equal across numerator/denominator groups are
/// cancelled first; p > q (and p == q with z > 1) is routed through the
/// inversion identity z -> 1/z. Integer-spaced pole lattices are handled by
/// perturbing the colliding parameters (+-eps, +-2eps Richardson stencil) and
/// extrapolating, with the series accumulated in long double.
double meijer_g(const MeijerGSpec& spec, const SeriesAccuracy& acc = {});

/// Extended bivariate Meijer-G: the double Mellin-Barnes integral
///   (2 pi i)^-2 oint oint prod_i Gamma(1 - outer_upper[i] + s + t)
///                        chi_1(s) chi_2(t) z1^s z2^t ds dt
/// where chi_k is the standard integrand of inner-k, expanded as a double
/// residue series over both pole lattices. The inner specs' own z fields are
/// ignored. Best effort: callers must keep a quadrature fallback.
double bivariate_meijer_g(std::span<const double> outer_upper,
                          const MeijerGSpec& inner1, const MeijerGSpec& inner2,
                          double z1, double z2, const SeriesAccuracy& acc = {});

}  // namespace fsorf
