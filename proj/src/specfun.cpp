#include "fsorf/specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

extern "C" long double lgammal_r(long double, int*);

namespace fsorf {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

struct SLog {
    long double log;
    int sign;
};

bool is_nonpos_int(long double x, long double tol = 1e-12L) {
    return x < 0.5L && std::fabs(x - std::nearbyint(x)) < tol;
}

SLog slgamma(long double x) {
    if (is_nonpos_int(x, 1e-13L))
        throw std::domain_error("gamma pole at non-positive integer argument");
    int sgn = 0;
    long double lg = lgammal_r(x, &sgn);
    return {lg, sgn};
}

// distance of x to the nearest integer
long double int_dist(long double x) {
    return std::fabs(x - std::nearbyint(x));
}

// ---------------------------------------------------------------------------
// generalized hypergeometric series core (shared by hyp_pfq and tests)
// ---------------------------------------------------------------------------
long double pfq_series(std::span<const long double> A,
                       std::span<const long double> B, long double z,
                       const SeriesAccuracy& acc, long double* max_term_out) {
    long double term = 1.0L, sum = 1.0L, max_term = 1.0L;
    int quiet = 0;
    bool done = false;
    for (int k = 0; k < acc.max_terms && !done; ++k) {
        long double num = 1.0L, den = 1.0L;
        bool terminated = false;
        for (long double a : A) {
            const long double f = a + k;
            if (f == 0.0L) terminated = true;
            num *= f;
        }
        if (terminated) {   // numerator polynomial: the series is exact here
            done = true;
            break;
        }
        for (long double b : B) {
            const long double f = b + k;
            if (f == 0.0L)
                throw std::domain_error("pFq: lower parameter hit a non-positive integer");
            den *= f;
        }
        term *= z * num / (den * (k + 1));
        sum += term;
        max_term = std::max(max_term, std::fabs(term));
        if (std::fabs(term) < acc.rel_tol * std::fabs(sum)) {
            done = ++quiet >= 2;
        } else {
            quiet = 0;
        }
    }
    if (!done) throw NonConvergenceError("pFq series did not converge within max_terms");
    if (max_term_out) *max_term_out = max_term;
    return sum;
}

// ---------------------------------------------------------------------------
// Slater expansion internals
// ---------------------------------------------------------------------------
struct GParams {
    int m, n, p, q;
    std::vector<long double> a, b;
    long double z;
};

// cancel numerator/denominator gamma pairs that are exactly shared:
// b_i (i<m) against a_j (j>=n), and a_i (i<n) against b_j (j>=m)
void reduce_params(GParams& g) {
    const long double tol = 1e-12L;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < g.m && !changed; ++i)
            for (int j = g.n; j < g.p && !changed; ++j)
                if (std::fabs(g.b[i] - g.a[j]) < tol) {
                    g.b.erase(g.b.begin() + i);
                    g.a.erase(g.a.begin() + j);
                    --g.m; --g.q; --g.p;
                    changed = true;
                }
        for (int i = 0; i < g.n && !changed; ++i)
            for (int j = g.m; j < g.q && !changed; ++j)
                if (std::fabs(g.a[i] - g.b[j]) < tol) {
                    g.a.erase(g.a.begin() + i);
                    g.b.erase(g.b.begin() + j);
                    --g.n; --g.p; --g.q;
                    changed = true;
                }
    }
}

GParams invert(const GParams& g) {
    GParams r;
    r.m = g.n; r.n = g.m; r.p = g.q; r.q = g.p;
    r.z = 1.0L / g.z;
    r.a.reserve(g.q); r.b.reserve(g.p);
    for (int j = 0; j < g.m; ++j) r.a.push_back(1.0L - g.b[j]);
    for (int j = g.m; j < g.q; ++j) r.a.push_back(1.0L - g.b[j]);
    for (int j = 0; j < g.n; ++j) r.b.push_back(1.0L - g.a[j]);
    for (int j = g.n; j < g.p; ++j) r.b.push_back(1.0L - g.a[j]);
    return r;
}

struct PinchError {};   // internal: stencil point landed on a pole

// one residue-lattice sum: h-th term of the Slater expansion
long double slater_term(const GParams& g, int h, const SeriesAccuracy& acc,
                        long double* abs_scale) {
    // prefactor in log space
    long double L = 0.0L;
    int sign = 1;
    for (int j = 0; j < g.m; ++j) {
        if (j == h) continue;
        const long double x = g.b[j] - g.b[h];
        if (is_nonpos_int(x, 1e-9L)) throw PinchError{};
        auto s = slgamma(x);
        L += s.log; sign *= s.sign;
    }
    for (int j = 0; j < g.n; ++j) {
        const long double x = 1.0L + g.b[h] - g.a[j];
        if (is_nonpos_int(x, 1e-13L))
            throw std::domain_error("meijer_g: upper/lower parameter contour pinch");
        auto s = slgamma(x);
        L += s.log; sign *= s.sign;
    }
    for (int j = g.m; j < g.q; ++j) {
        const long double x = 1.0L + g.b[h] - g.b[j];
        if (is_nonpos_int(x, 1e-9L)) throw PinchError{};
        auto s = slgamma(x);
        L -= s.log; sign *= s.sign;
    }
    for (int j = g.n; j < g.p; ++j) {
        const long double x = g.a[j] - g.b[h];
        if (is_nonpos_int(x, 1e-13L)) return 0.0L;   // residue killed by 1/Gamma
        auto s = slgamma(x);
        L -= s.log; sign *= s.sign;
    }
    L += g.b[h] * std::log(g.z);
    const long double pre = sign * std::exp(L);
    if (!std::isfinite(pre))
        throw NonConvergenceError("meijer_g: prefactor overflow");

    // hypergeometric factor with argument (-1)^(p-m-n) z
    const long double zz =
        (((g.p - g.m - g.n) & 1) ? -1.0L : 1.0L) * g.z;
    std::vector<long double> A(g.p), B;
    for (int j = 0; j < g.p; ++j) A[j] = 1.0L + g.b[h] - g.a[j];
    B.reserve(g.q - 1);
    for (int j = 0; j < g.q; ++j)
        if (j != h) B.push_back(1.0L + g.b[h] - g.b[j]);

    long double term = 1.0L, sum = 1.0L, max_term = 1.0L;
    int quiet = 0;
    for (int k = 0; k < acc.max_terms; ++k) {
        long double num = 1.0L, den = 1.0L;
        bool terminated = false;
        for (long double aa : A) {
            const long double f = aa + k;
            if (f == 0.0L) terminated = true;
            num *= f;
        }
        if (terminated) { quiet = 2; break; }
        for (long double bb : B) {
            const long double f = bb + k;
            if (std::fabs(f) < 1e-14L) throw PinchError{};
            den *= f;
        }
        term *= zz * num / (den * (k + 1));
        sum += term;
        max_term = std::max(max_term, std::fabs(term));
        if (std::fabs(term) < acc.rel_tol * std::fabs(sum)) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    if (quiet < 2)
        throw NonConvergenceError("meijer_g: residue series did not converge");
    *abs_scale = std::fabs(pre) * max_term;
    return pre * sum;
}

long double slater_sum(const GParams& g, const SeriesAccuracy& acc) {
    long double total = 0.0L, scale = 0.0L;
    for (int h = 0; h < g.m; ++h) {
        long double s = 0.0L;
        total += slater_term(g, h, acc, &s);
        scale = std::max(scale, s);
    }
    // cancellation guard: the answer must stand clear of rounding noise
    if (scale > 0.0L && std::fabs(total) < scale * LDBL_EPSILON * 1e4L &&
        std::fabs(total) > 0.0L && scale * LDBL_EPSILON > 1e-30L)
        throw NonConvergenceError("meijer_g: catastrophic cancellation in Slater sum");
    return total;
}

// indices of pole-group parameters needing perturbation
std::vector<int> collision_group(const GParams& g) {
    const long double TH = 1e-3L;
    std::vector<int> idx;
    auto mark = [&](int i) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    };
    for (int i = 0; i < g.m; ++i) {
        for (int j = 0; j < g.q; ++j) {
            if (i == j) continue;
            const long double d = g.b[j] - g.b[i];
            if (j < g.m) {
                if (int_dist(d) < TH) { mark(i); mark(j); }
            } else if (d > 0.5L && int_dist(d) < TH) {
                mark(i);
            }
        }
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

long double eval_with_perturbation(const GParams& g, const SeriesAccuracy& acc) {
    const std::vector<int> group = collision_group(g);
    if (group.empty()) return slater_sum(g, acc);

    long double eps = 0x1p-13L;
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            auto at = [&](long double d) {
                GParams gp = g;
                long double mult = 1.0L;
                for (int i : group) {
                    gp.b[i] += mult * d;
                    mult += 1.0L;
                }
                return slater_sum(gp, acc);
            };
            const long double s1 = 0.5L * (at(eps) + at(-eps));
            const long double s2 = 0.5L * (at(2 * eps) + at(-2 * eps));
            return (4.0L * s1 - s2) / 3.0L;
        } catch (const PinchError&) {
            eps *= 1.37L;
        }
    }
    throw NonConvergenceError("meijer_g: pole collision unresolvable after perturbation retries");
}

GParams to_internal(const MeijerGSpec& s) {
    if (s.m < 0 || s.n < 0 || s.m > s.q || s.n > s.p)
        throw std::invalid_argument("meijer_g: order quadruple out of range");
    if ((int)s.a.size() != s.p || (int)s.b.size() != s.q)
        throw std::invalid_argument("meijer_g: parameter list sizes must be p and q");
    if (!(s.z > 0.0))
        throw std::invalid_argument("meijer_g: argument must be positive");
    GParams g;
    g.m = s.m; g.n = s.n; g.p = s.p; g.q = s.q;
    g.a.assign(s.a.begin(), s.a.end());
    g.b.assign(s.b.begin(), s.b.end());
    g.z = s.z;
    return g;
}

long double meijer_eval(GParams g, const SeriesAccuracy& acc) {
    reduce_params(g);
    if (g.m == 0 && g.p <= g.q) return 0.0L;   // no right poles
    if (g.p > g.q || (g.p == g.q && g.z > 1.0L + 1e-12L))
        return meijer_eval(invert(g), acc);
    if (g.p == g.q && std::fabs(g.z - 1.0L) <= 1e-12L) {
        // evaluate both routes; average when they agree, fall back to the one
        // that converged, error otherwise
        bool ok_d = true, ok_i = true;
        long double direct = 0.0L, via_inv = 0.0L;
        try { direct = eval_with_perturbation(g, acc); } catch (...) { ok_d = false; }
        try { via_inv = eval_with_perturbation(invert(g), acc); } catch (...) { ok_i = false; }
        if (ok_d && ok_i) {
            if (std::fabs(direct - via_inv) <= 1e-6L * std::fabs(direct))
                return 0.5L * (direct + via_inv);
            throw NonConvergenceError("meijer_g: boundary |z| = 1 routes disagree");
        }
        if (ok_d) return direct;
        if (ok_i) return via_inv;
        throw NonConvergenceError("meijer_g: boundary |z| = 1, no convergent route");
    }
    return eval_with_perturbation(g, acc);
}

}  // namespace

// ---------------------------------------------------------------------------
// public API
// ---------------------------------------------------------------------------

SignedLogGamma ln_gamma(double x) {
    auto s = slgamma((long double)x);
    return {(double)s.log, s.sign};
}

double pochhammer(double x, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be non-negative");
    long double r = 1.0L;
    for (int k = 0; k < n; ++k) r *= (long double)x + k;
    return (double)r;
}

double hyp_pfq(std::span<const double> a, std::span<const double> b, double z,
               const SeriesAccuracy& acc) {
    std::vector<long double> A(a.begin(), a.end()), B(b.begin(), b.end());
    return (double)pfq_series(A, B, (long double)z, acc, nullptr);
}

double meijer_g(const MeijerGSpec& spec, const SeriesAccuracy& acc) {
    return (double)meijer_eval(to_internal(spec), acc);
}

// ---------------------------------------------------------------------------
// modified Bessel K: Temme series (x < 2) + Thompson-Barnett CF (x >= 2),
// upward recurrence in the order. Independent of the Meijer-G machinery by
// construction (it serves as its oracle).
// ---------------------------------------------------------------------------
namespace {

// coefficients of 1/Gamma(1+z) = sum a_k z^k, used near mu = 0
constexpr long double kRG1 = 0.57721566490153286060651209008240L;   // gamma_E
constexpr long double kRG3 = 0.57721566490153286060651209008240L *
        0.57721566490153286060651209008240L *
        0.57721566490153286060651209008240L / 6.0L
    - 0.57721566490153286060651209008240L * kPi * kPi / 12.0L
    + 0.40068563438653142846657938717048L;   // zeta(3)/3 = 0.400685634386531428...

void temme_gammas(long double mu, long double& gam1, long double& gam2,
                  long double& gampl, long double& gammi) {
    gampl = 1.0L / std::exp(slgamma(1.0L + mu).log);
    gammi = 1.0L / std::exp(slgamma(1.0L - mu).log);
    if (std::fabs(mu) < 1e-5L)
        gam1 = -(kRG1 + kRG3 * mu * mu);
    else
        gam1 = (gammi - gampl) / (2.0L * mu);
    gam2 = 0.5L * (gammi + gampl);
}

long double besselk_impl(long double nu, long double x) {
    nu = std::fabs(nu);                       // K_{-nu} = K_nu
    const int nl = (int)(nu + 0.5L);
    const long double mu = nu - nl;            // mu in [-1/2, 1/2]
    const long double EPS = 1e-19L;
    const int MAXIT = 20000;
    long double rkmu, rk1;

    if (x < 2.0L) {
        const long double x1 = 0.5L * x;
        const long double pimu = kPi * mu;
        const long double fact =
            (std::fabs(pimu) < 1e-12L) ? 1.0L : pimu / std::sin(pimu);
        long double d = -std::log(x1);
        long double e = mu * d;
        const long double fact2 =
            (std::fabs(e) < 1e-12L) ? 1.0L : std::sinh(e) / e;
        long double gam1, gam2, gampl, gammi;
        temme_gammas(mu, gam1, gam2, gampl, gammi);
        long double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        long double sum = ff;
        e = std::exp(e);
        long double pp = 0.5L * e / gampl;
        long double qq = 0.5L / (e * gammi);
        long double c = 1.0L;
        d = x1 * x1;
        long double sum1 = pp;
        int i = 1;
        for (; i <= MAXIT; ++i) {
            ff = (i * ff + pp + qq) / (i * i - mu * mu);
            c *= d / i;
            pp /= (i - mu);
            qq /= (i + mu);
            const long double del = c * ff;
            sum += del;
            const long double del1 = c * (pp - i * ff);
            sum1 += del1;
            if (std::fabs(del) < std::fabs(sum) * EPS) break;
        }
        if (i > MAXIT) throw NonConvergenceError("bessel_k: Temme series stalled");
        rkmu = sum;
        rk1 = sum1 * (2.0L / x);
    } else {
        const long double a1 = 0.25L - mu * mu;
        long double b = 2.0L * (1.0L + x);
        long double d = 1.0L / b;
        long double h = d, delh = d;
        long double q1 = 0.0L, q2 = 1.0L;
        long double q = a1, c = a1, a = -a1;
        long double s = 1.0L + q * delh;
        int i = 2;
        for (; i <= MAXIT; ++i) {
            a -= 2 * (i - 1);
            c = -a * c / i;
            const long double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0L;
            d = 1.0L / (b + a * d);
            delh = (b * d - 1.0L) * delh;
            h += delh;
            const long double dels = q * delh;
            s += dels;
            if (std::fabs(dels / s) < EPS) break;
        }
        if (i > MAXIT) throw NonConvergenceError("bessel_k: continued fraction stalled");
        h = a1 * h;
        rkmu = std::sqrt(kPi / (2.0L * x)) * std::exp(-x) / s;
        rk1 = rkmu * (mu + x + 0.5L - h) / x;
    }
    for (int i = 1; i <= nl; ++i) {
        const long double rktemp = (mu + i) * (2.0L / x) * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    return rkmu;
}

}  // namespace

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
    return (double)besselk_impl((long double)nu, (long double)x);
}

// ---------------------------------------------------------------------------
// extended bivariate Meijer-G, double residue series
// ---------------------------------------------------------------------------
namespace {

struct Lattice {
    long double pre_log;
    int pre_sign;
    // linear factors of the term ratio t_{k+1}/t_k = -z/(k+1) * prod num / prod den
    std::vector<long double> num;   // (f + k) factors
    std::vector<long double> den;
    long double z;
};

Lattice make_lattice(const GParams& g, int h, long double z) {
    Lattice lat;
    lat.z = z;
    lat.pre_log = 0.0L;
    lat.pre_sign = 1;
    for (int j = 0; j < g.m; ++j) {
        if (j == h) continue;
        const long double x = g.b[j] - g.b[h];
        if (is_nonpos_int(x, 1e-9L)) throw PinchError{};
        auto s = slgamma(x);
        lat.pre_log += s.log; lat.pre_sign *= s.sign;
    }
    for (int j = 0; j < g.n; ++j) {
        auto s = slgamma(1.0L + g.b[h] - g.a[j]);
        lat.pre_log += s.log; lat.pre_sign *= s.sign;
    }
    for (int j = g.m; j < g.q; ++j) {
        const long double x = 1.0L + g.b[h] - g.b[j];
        if (is_nonpos_int(x, 1e-9L)) throw PinchError{};
        auto s = slgamma(x);
        lat.pre_log -= s.log; lat.pre_sign *= s.sign;
    }
    for (int j = g.n; j < g.p; ++j) {
        auto s = slgamma(g.a[j] - g.b[h]);
        lat.pre_log -= s.log; lat.pre_sign *= s.sign;
    }
    lat.pre_log += g.b[h] * std::log(z);
    // ratio factors (independent of k offset; evaluated as f + k)
    for (int j = 0; j < g.n; ++j) lat.num.push_back(1.0L + g.b[h] - g.a[j]);
    for (int j = g.n; j < g.p; ++j) lat.num.push_back(-(g.a[j] - g.b[h] - 1.0L));
    for (int j = 0; j < g.q; ++j) {
        if (j == h) continue;
        if (j < g.m)
            lat.den.push_back(-(g.b[j] - g.b[h] - 1.0L));
        else
            lat.den.push_back(1.0L + g.b[h] - g.b[j]);
    }
    // fold the (-1)^{p-m-n}-style sign bookkeeping into z:
    // ratio = -z * prod(numf+k)*(-1)^{#neg num} / (prod(denf+k)*(-1)^{#neg den} * (k+1))
    int flips = 1 + (g.p - g.n) + (g.m - 1);
    lat.z = (flips & 1) ? -z : z;
    return lat;
}

long double ratio_at(const Lattice& lat, int k) {
    long double num = 1.0L, den = 1.0L;
    for (long double f : lat.num) num *= (f + k);
    for (long double f : lat.den) {
        const long double d = f + k;
        if (std::fabs(d) < 1e-14L) throw PinchError{};
        den *= d;
    }
    return lat.z * num / (den * (k + 1));
}

// term(k1,k2) = t1(k1) t2(k2) R(k1+k2), with R(j) = prod_c Gamma(c+j)/Gamma(c)
long double ebmg_sum(const GParams& g1, const GParams& g2,
                     std::span<const double> outer, long double z1,
                     long double z2, const SeriesAccuracy& acc) {
    long double total = 0.0L;
    const int cap = std::max(acc.max_terms, 64);
    for (int h1 = 0; h1 < g1.m; ++h1) {
        Lattice l1 = make_lattice(g1, h1, z1);
        for (int h2 = 0; h2 < g2.m; ++h2) {
            Lattice l2 = make_lattice(g2, h2, z2);
            long double base_log = l1.pre_log + l2.pre_log;
            int base_sign = l1.pre_sign * l2.pre_sign;
            std::vector<long double> c0;
            for (double A : outer) {
                const long double c = 1.0L - (long double)A + g1.b[h1] + g2.b[h2];
                auto s = slgamma(c);
                base_log += s.log; base_sign *= s.sign;
                c0.push_back(c);
            }
            const long double base = base_sign * std::exp(base_log);
            if (!std::isfinite(base))
                throw NonConvergenceError("bivariate_meijer_g: prefactor overflow");

            long double S = 0.0L;
            long double t1 = 1.0L;
            long double r_row = 1.0L;   // R(k1)
            int quiet_rows = 0;
            bool rows_done = false;
            for (int k1 = 0; k1 < cap && !rows_done; ++k1) {
                long double inner = 0.0L;
                long double t2 = 1.0L;
                long double og = r_row;          // R(k1 + k2)
                int quiet = 0;
                bool inner_done = false;
                for (int k2 = 0; k2 < cap && !inner_done; ++k2) {
                    const long double contrib = t2 * og;
                    inner += contrib;
                    if (std::fabs(contrib) < acc.rel_tol * std::fabs(inner) &&
                        k2 >= 2) {
                        if (++quiet >= 2) inner_done = true;
                    } else {
                        quiet = 0;
                    }
                    t2 *= ratio_at(l2, k2);
                    for (long double c : c0) og *= (c + k1 + k2);
                }
                if (!inner_done)
                    throw NonConvergenceError("bivariate_meijer_g: inner series stalled");
                const long double row = t1 * inner;
                S += row;
                if (std::fabs(row) < acc.rel_tol * std::fabs(S) && k1 >= 2) {
                    if (++quiet_rows >= 2) rows_done = true;
                } else {
                    quiet_rows = 0;
                }
                t1 *= ratio_at(l1, k1);
                for (long double c : c0) r_row *= (c + k1);
            }
            if (!rows_done)
                throw NonConvergenceError("bivariate_meijer_g: outer series stalled");
            total += base * S;
        }
    }
    return total;
}

}  // namespace

double bivariate_meijer_g(std::span<const double> outer_upper,
                          const MeijerGSpec& inner1, const MeijerGSpec& inner2,
                          double z1, double z2, const SeriesAccuracy& acc) {
    if (!(z1 > 0.0) || !(z2 > 0.0))
        throw std::invalid_argument("bivariate_meijer_g: arguments must be positive");
    GParams g1 = to_internal(inner1);
    GParams g2 = to_internal(inner2);
    g1.z = z1; g2.z = z2;
    reduce_params(g1);
    reduce_params(g2);
    if (g1.p >= g1.q || g2.p >= g2.q)
        throw std::invalid_argument("bivariate_meijer_g: inner kernels must have p < q");

    std::vector<int> grp1 = collision_group(g1);
    std::vector<int> grp2 = collision_group(g2);
    if (grp1.empty() && grp2.empty())
        return (double)ebmg_sum(g1, g2, outer_upper, z1, z2, acc);

    long double eps = 0x1p-13L;
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            auto at = [&](long double d) {
                GParams p1 = g1, p2 = g2;
                long double mult = 1.0L;
                for (int i : grp1) { p1.b[i] += mult * d; mult += 1.0L; }
                for (int i : grp2) { p2.b[i] += mult * d; mult += 1.0L; }
                return ebmg_sum(p1, p2, outer_upper, z1, z2, acc);
            };
            const long double s1 = 0.5L * (at(eps) + at(-eps));
            const long double s2 = 0.5L * (at(2 * eps) + at(-2 * eps));
            return (double)((4.0L * s1 - s2) / 3.0L);
        } catch (const PinchError&) {
            eps *= 1.37L;
        }
    }
    throw NonConvergenceError("bivariate_meijer_g: pole collision unresolvable");
}

}  // namespace fsorf
