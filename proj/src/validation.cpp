#include "fsorf/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include <json.hpp>

#include "fsorf/ber.hpp"
#include "fsorf/montecarlo.hpp"
#include "fsorf/outage.hpp"
#include "fsorf/presets.hpp"
#include "fsorf/quadrature.hpp"
#include "fsorf/rng.hpp"

namespace fsorf {

namespace {

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel_err(double got, double ref) {
    return std::fabs(got - ref) / std::fabs(ref);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// ---------------------------------------------------------------- C1
CriterionResult c1_meijer_identities() {
    Timer tm;
    CriterionResult r;
    r.id = "1";
    r.name = "Meijer-G identity suite";
    double worst = 0.0;
    for (double z : {1e-3, 0.1, 1.0, 10.0}) {
        MeijerGSpec e;
        e.m = 1; e.n = 0; e.p = 0; e.q = 1;
        e.b = {0.0};
        e.z = z;
        const double r1 = rel_err(meijer_g(e), std::exp(-z));
        MeijerGSpec k;
        k.m = 2; k.n = 0; k.p = 0; k.q = 2;
        k.b = {1.0, 0.0};
        k.z = z;
        const double ref = 2.0 * std::sqrt(z) * bessel_k(1.0, 2.0 * std::sqrt(z));
        const double r2 = rel_err(meijer_g(k), ref);
        worst = std::max({worst, r1, r2});
        r.details.push_back(fmt("z=%.3g exp_rel=%.3e besselK_rel=%.3e", z, r1, r2));
    }
    r.runtime_s = tm.s();
    r.pass = worst <= 1e-10 && r.runtime_s < 1.0;
    r.details.push_back(fmt("worst_rel=%.3e (tol 1e-10)", worst));
    return r;
}

// ---------------------------------------------------------------- C2
CriterionResult c2_series_equivalence() {
    Timer tm;
    CriterionResult r;
    r.id = "2";
    r.name = "Power-series CDF vs Meijer-G CDF";
    double worst = 0.0;
    for (auto [p, tag] : {std::pair{moderate_regime(1.0), "moderate"},
                          std::pair{strong_regime(1.0), "strong"}}) {
        double w = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double rr = std::pow(10.0, -3.0 + 4.0 * i / 49.0);
            const double a = gg_pe_cdf(p, rr, GgCdfMethod::meijerg);
            const double b = gg_pe_cdf(p, rr, GgCdfMethod::series);
            w = std::max(w, rel_err(b, a));
        }
        worst = std::max(worst, w);
        r.details.push_back(fmt("%s worst_rel=%.3e", tag, w));
    }
    r.runtime_s = tm.s();
    r.pass = worst <= 1e-6 && r.runtime_s < 5.0;
    return r;
}

// ---------------------------------------------------------------- C3
CriterionResult c3_sampler_ks(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "3";
    r.name = "Sampler certification (KS)";
    // the 0.003 gate sits ~2x above the KS noise floor at 1e6 samples; the
    // sample count is never reduced in quick mode or the gate loses meaning
    const std::uint64_t n = cfg.ks_samples;
    const double snr = db_to_linear(20.0);
    struct Law {
        const char* tag;
        ChannelParams ch;
        std::function<double(double)> cdf;
    };
    std::vector<Law> laws;
    laws.push_back({"rayleigh", RayleighParams{snr},
                    [snr](double g) { return rayleigh_cdf({snr}, g); }});
    {
        const auto p = moderate_regime(snr);
        const auto co = series_cdf_coeffs(p, 64);
        laws.push_back({"gg_moderate", p, [p, co](double g) {
                            const double w = p.alpha * p.beta * p.kappa() *
                                             std::sqrt(g / p.mean_snr);
                            if (w >= 25.0) return gg_pe_cdf(p, g);
                            return std::clamp(series_cdf_value(co, g / p.mean_snr), 0.0, 1.0);
                        }});
    }
    {
        const auto p = strong_regime(snr);
        const auto co = series_cdf_coeffs(p, 64);
        laws.push_back({"gg_strong", p, [p, co](double g) {
                            const double w = p.alpha * p.beta * p.kappa() *
                                             std::sqrt(g / p.mean_snr);
                            if (w >= 25.0) return gg_pe_cdf(p, g);
                            return std::clamp(series_cdf_value(co, g / p.mean_snr), 0.0, 1.0);
                        }});
    }
    laws.push_back({"ne_saturate", saturate_regime(snr), [snr](double g) {
                        return ne_cdf({1.0, snr}, g);
                    }});

    bool ok = true;
    for (size_t li = 0; li < laws.size(); ++li) {
        std::vector<double> samples(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            RngStream rng(cfg.seed + 1000 + li, i);
            samples[i] = sample_snr(laws[li].ch, rng);
        }
        std::sort(samples.begin(), samples.end());
        const double d = ks_distance(samples, laws[li].cdf);
        ok = ok && d < 0.003;
        r.details.push_back(fmt("%s n=%llu ks=%.5f (tol 0.003)", laws[li].tag,
                                (unsigned long long)n, d));
    }
    r.runtime_s = tm.s();
    r.pass = ok && r.runtime_s < 30.0;
    return r;
}

// ---------------------------------------------------------------- C4
CriterionResult c4_af_oracle(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "4";
    r.name = "AF-relay CDF vs quadrature and Monte Carlo";
    LinkConfig link;
    link.n_antennas = 2;
    const double snr = db_to_linear(25.0);
    const RayleighParams rf1{snr};
    struct Case {
        const char* tag;
        AfBranch branch;
        ChannelParams ch;
    };
    const Case cases[] = {
        {"gg", AfBranch::gg, moderate_regime(snr)},
        {"ne", AfBranch::ne, saturate_regime(snr)},
        {"rf", AfBranch::rf, RayleighParams{snr}},
    };
    bool ok = true;
    for (const auto& c : cases) {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double g = snr * std::pow(10.0, -2.0 + 2.5 * i / 9.0);
            const double a = af_relay_cdf(c.branch, link, c.ch, rf1, g);
            const double b = af_relay_cdf_quadrature(c.branch, link, c.ch, rf1, g);
            worst = std::max(worst, rel_err(a, b));
        }
        ok = ok && worst <= 1e-5;
        r.details.push_back(fmt("%s closed_vs_quadrature worst_rel=%.3e (tol 1e-5)",
                                c.tag, worst));
    }
    SimConfig sim;
    sim.trials = cfg.quick ? 200'000 : cfg.mc_trials;
    sim.workers = cfg.workers;
    {   // single-antenna point: N = 1, C = 1, snr 10, gamma = 1
        LinkConfig l1 = link;
        l1.n_antennas = 1;
        sim.seed = cfg.seed + 39;
        const double a = af_relay_cdf(AfBranch::rf, l1, ChannelParams{RayleighParams{10.0}},
                                      {10.0}, 1.0);
        const SimResult s = simulate_af_branch(AfBranch::rf, l1,
                                               ChannelParams{RayleighParams{10.0}},
                                               {10.0}, 1.0, sim);
        const double sigma =
            std::sqrt(s.outage_rate * (1.0 - s.outage_rate) / s.trials_used);
        const double dev = std::fabs(a - s.outage_rate);
        ok = ok && dev <= 3.0 * sigma + 1e-12;
        r.details.push_back(fmt("rf N=1 snr=10 g=1 analytic=%.6e mc=%.6e dev/sigma=%.2f",
                                a, s.outage_rate, sigma > 0 ? dev / sigma : 0.0));
    }
    int law_index = 0;
    for (const auto& c : cases) {
        sim.seed = cfg.seed + 40 + law_index++;
        for (double frac : {0.03, 0.3, 1.0}) {
            const double g = snr * frac;
            const double a = af_relay_cdf(c.branch, link, c.ch, rf1, g);
            const SimResult s = simulate_af_branch(c.branch, link, c.ch, rf1, g, sim);
            const double sigma =
                std::sqrt(s.outage_rate * (1.0 - s.outage_rate) / s.trials_used);
            const double dev = std::fabs(a - s.outage_rate);
            const bool within = dev <= 3.0 * sigma + 1e-12;
            ok = ok && within;
            r.details.push_back(fmt("%s g/snr=%.2f analytic=%.6e mc=%.6e dev/sigma=%.2f",
                                    c.tag, frac, a, s.outage_rate,
                                    sigma > 0 ? dev / sigma : 0.0));
        }
    }
    r.runtime_s = tm.s();
    r.pass = ok && r.runtime_s < 300.0;
    return r;
}

// ---------------------------------------------------------------- C5
CriterionResult c5_outage_vs_mc(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "5";
    r.name = "Outage analytic vs Monte Carlo";
    LinkConfig link;                       // N = 2, M = 2, gamma_th set below
    const double gth = db_to_linear(10.0);
    SimConfig sim;
    sim.trials = cfg.quick ? 200'000 : cfg.mc_trials;
    sim.workers = cfg.workers;
    sim.mode = Gamma1Mode::independent;
    bool ok = true;
    int pt = 0;
    for (const char* regime : {"moderate", "saturate"}) {
        for (double db : {15.0, 20.0, 25.0, 30.0}) {
            const double snr = db_to_linear(db);
            const ChannelParams fso = regime_channel(regime, snr);
            const RayleighParams rf{snr};
            OutageRequest req{link, fso, rf, OutageForm::exact};
            const double a = std::holds_alternative<GammaGammaPointingParams>(fso)
                                 ? outage_gg(req, gth)
                                 : outage_ne(req, gth);
            sim.seed = cfg.seed + 100 + pt++;
            const SimResult s = simulate_link(link, fso, rf, gth, sim);
            const double sigma =
                std::sqrt(s.outage_rate * (1.0 - s.outage_rate) / s.trials_used);
            const double dev = std::fabs(a - s.outage_rate);
            const bool within = dev <= 3.0 * sigma + 1e-12;
            ok = ok && within;
            r.details.push_back(fmt("%s %gdB analytic=%.6e mc=%.6e dev/sigma=%.2f",
                                    regime, db, a, s.outage_rate,
                                    sigma > 0 ? dev / sigma : 0.0));
        }
    }
    {   // the independence-approximation gap surfaced, never asserted away
        const double snr = db_to_linear(20.0);
        const ChannelParams fso = regime_channel("moderate", snr);
        SimConfig shared = sim;
        shared.seed = cfg.seed + 150;
        shared.mode = Gamma1Mode::shared;
        SimConfig indep = shared;
        indep.mode = Gamma1Mode::independent;
        const SimResult ss = simulate_link(link, fso, {snr}, gth, shared);
        const SimResult si = simulate_link(link, fso, {snr}, gth, indep);
        r.details.push_back(fmt("moderate 20dB shared_gamma1 mc=%.6e vs "
                                "independent mc=%.6e (model gap, reported only)",
                                ss.outage_rate, si.outage_rate));
    }
    r.runtime_s = tm.s();
    r.pass = ok && r.runtime_s < 600.0;
    return r;
}

// shared curve helpers ------------------------------------------------------
double outage_at(const char* regime, int N, int M, double snr_db, double gth) {
    LinkConfig link;
    link.n_antennas = N;
    link.n_relays = M;
    const double snr = db_to_linear(snr_db);
    OutageRequest req{link, regime_channel(regime, snr), RayleighParams{snr},
                      OutageForm::exact};
    return std::holds_alternative<GammaGammaPointingParams>(req.fso)
               ? outage_gg(req, gth)
               : outage_ne(req, gth);
}

double find_crossing_db(const std::function<double(double)>& fn_of_db, double target,
                        double lo, double hi) {
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (fn_of_db(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- C6
CriterionResult c6_fig3() {
    Timer tm;
    CriterionResult r;
    r.id = "6";
    r.name = "Relay-count ordering and fixed horizontal gaps";
    const double gth = db_to_linear(10.0);
    bool ok = true;
    for (double db : {20.0, 25.0, 30.0}) {
        const double p1 = outage_at("moderate", 2, 1, db, gth);
        const double p2 = outage_at("moderate", 2, 2, db, gth);
        const double p3 = outage_at("moderate", 2, 3, db, gth);
        const bool inc = p1 < p2 && p2 < p3;
        ok = ok && inc;
        r.details.push_back(fmt("%gdB P(M=1,2,3)=%.4e,%.4e,%.4e increasing=%d", db,
                                p1, p2, p3, (int)inc));
    }
    std::map<int, std::pair<double, double>> cross;
    for (int M : {1, 2, 3}) {
        auto fn = [&](double db) { return outage_at("moderate", 2, M, db, gth); };
        cross[M] = {find_crossing_db(fn, 1e-2, 5.0, 60.0),
                    find_crossing_db(fn, 1e-3, 5.0, 60.0)};
    }
    for (int M : {1, 2}) {
        const double gap2 = cross[M + 1].first - cross[M].first;
        const double gap3 = cross[M + 1].second - cross[M].second;
        const double diff = std::fabs(gap3 - gap2);
        ok = ok && diff < 1.0;
        r.details.push_back(fmt("gap M%d->M%d @1e-2=%.3fdB @1e-3=%.3fdB |diff|=%.3fdB "
                                "(tol 1dB)", M, M + 1, gap2, gap3, diff));
    }
    r.runtime_s = tm.s();
    r.pass = ok;
    return r;
}

// ---------------------------------------------------------------- C7
CriterionResult c7_fig4() {
    Timer tm;
    CriterionResult r;
    r.id = "7";
    r.name = "Weak antenna-count dependence";
    const double gth = db_to_linear(10.0);
    bool ok = true;
    for (double db : {25.0, 30.0, 35.0, 40.0}) {
        double pmin = 1.0, pmax = 0.0;
        for (int N : {1, 2, 3, 4}) {
            const double p = outage_at("moderate", N, 2, db, gth);
            pmin = std::min(pmin, p);
            pmax = std::max(pmax, p);
        }
        const double p0 = outage_at("moderate", 1, 2, db, gth);
        const double p0b = outage_at("moderate", 1, 2, db + 0.5, gth);
        const double slope = (std::log10(p0b) - std::log10(p0)) / 0.5;  // dec per dB
        const double band = std::fabs((std::log10(pmax) - std::log10(pmin)) / slope);
        ok = ok && band < 1.0;
        r.details.push_back(fmt("%gdB band=%.3fdB (tol 1dB)", db, band));
    }
    r.runtime_s = tm.s();
    r.pass = ok;
    return r;
}

// ---------------------------------------------------------------- C8
CriterionResult c8_fig5() {
    Timer tm;
    CriterionResult r;
    r.id = "8";
    r.name = "Moderate vs strong BER gap";
    auto ber_of_db = [](const char* regime, double db) {
        const double snr = db_to_linear(db);
        LinkConfig link;
        OutageRequest req{link, regime_channel(regime, snr), RayleighParams{snr},
                          OutageForm::expanded};
        return dpsk_ber_quadrature([&](double g) { return outage_gg(req, g); });
    };
    std::map<std::string, std::pair<double, double>> cr;
    for (const char* regime : {"moderate", "strong"}) {
        auto fn = [&](double db) { return ber_of_db(regime, db); };
        const double d3 = find_crossing_db(fn, 1e-3, 8.0, 45.0);
        const double d4 = find_crossing_db(fn, 1e-4, 8.0, 45.0);
        cr[regime] = {d3, d4};
        r.details.push_back(fmt("%s Pe=1e-3 at %.3fdB, 1e-4 at %.3fdB", regime, d3, d4));
    }
    const double gap3 = cr["strong"].first - cr["moderate"].first;
    const double gap4 = cr["strong"].second - cr["moderate"].second;
    const bool ok3 = std::fabs(gap3 - 1.5) <= 0.75;
    const bool ok4 = std::fabs(gap4 - 2.0) <= 0.75;
    r.details.push_back(fmt("gap @1e-3=%.3fdB (claim 1.5+-0.75) @1e-4=%.3fdB "
                            "(claim 2.0+-0.75)", gap3, gap4));
    r.runtime_s = tm.s();
    r.pass = ok3 && ok4;
    return r;
}

// ---------------------------------------------------------------- C9
CriterionResult c9_ber_routes(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "9";
    r.name = "BER route agreement (quadrature / closed form / MC)";
    LinkConfig link;
    const double snr = db_to_linear(20.0);
    SimConfig sim;
    sim.trials = cfg.quick ? 200'000 : cfg.mc_trials;
    sim.workers = cfg.workers;
    bool ok = true;
    int idx = 0;
    for (const char* regime : {"moderate", "strong"}) {
        const auto p = std::get<GammaGammaPointingParams>(regime_channel(regime, snr));
        OutageRequest req{link, ChannelParams{p}, RayleighParams{snr},
                          OutageForm::expanded};
        const double quad =
            dpsk_ber_quadrature([&](double g) { return outage_gg(req, g); });
        const BerResult closed = dpsk_ber_gg_exact(link, p, {snr});
        if (closed.used_fallback) {
            r.details.push_back(fmt("%s closed form fell back to quadrature", regime));
        } else {
            const double rel = rel_err(closed.value, quad);
            ok = ok && rel <= 1e-4;
            r.details.push_back(fmt("%s quad=%.9e closed=%.9e rel=%.3e (tol 1e-4)",
                                    regime, quad, closed.value, rel));
        }
        sim.seed = cfg.seed + 200 + idx++;
        const SimResult s =
            simulate_link(link, ChannelParams{p}, {snr}, db_to_linear(10.0), sim);
        const double sigma = s.ber_ci95 / 1.96;
        const double dev = std::fabs(quad - s.ber_estimate);
        ok = ok && dev <= 3.0 * sigma + 1e-12;
        r.details.push_back(fmt("%s quad_vs_mc dev/sigma=%.2f", regime,
                                sigma > 0 ? dev / sigma : 0.0));
    }
    {
        const NegExpParams p = saturate_regime(snr);
        OutageRequest asym{link, ChannelParams{p}, RayleighParams{snr},
                           OutageForm::asymptotic};
        const double quad37 =
            dpsk_ber_quadrature([&](double g) { return outage_ne(asym, g); });
        const BerResult closed = dpsk_ber_ne_asymptotic(link, p, {snr});
        if (closed.used_fallback) {
            r.details.push_back("ne closed form fell back to quadrature");
        } else {
            const double rel = rel_err(closed.value, quad37);
            ok = ok && rel <= 1e-4;
            r.details.push_back(fmt("ne quad37=%.9e closed38=%.9e rel=%.3e (tol 1e-4)",
                                    quad37, closed.value, rel));
        }
        OutageRequest exact{link, ChannelParams{p}, RayleighParams{snr},
                            OutageForm::exact};
        const double quad_exact =
            dpsk_ber_quadrature([&](double g) { return outage_ne(exact, g); });
        sim.seed = cfg.seed + 210;
        const SimResult s =
            simulate_link(link, ChannelParams{p}, {snr}, db_to_linear(10.0), sim);
        const double sigma = s.ber_ci95 / 1.96;
        const double dev = std::fabs(quad_exact - s.ber_estimate);
        ok = ok && dev <= 3.0 * sigma + 1e-12;
        r.details.push_back(fmt("ne exact_quad_vs_mc dev/sigma=%.2f",
                                sigma > 0 ? dev / sigma : 0.0));
    }
    r.runtime_s = tm.s();
    r.pass = ok;
    return r;
}

// ---------------------------------------------------------------- C10
CriterionResult c10_ne_asymptotic(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "10";
    r.name = "NE asymptotic validity (10% for snr >= 5 dB)";
    LinkConfig link;
    const double gth = db_to_linear(10.0);
    SimConfig sim;
    sim.trials = cfg.quick ? 200'000 : cfg.mc_trials;
    sim.workers = cfg.workers;
    bool ok = true;
    int idx = 0;
    for (double db : {5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
        const double snr = db_to_linear(db);
        const NegExpParams p = saturate_regime(snr);
        OutageRequest exact{link, ChannelParams{p}, RayleighParams{snr},
                            OutageForm::exact};
        OutageRequest asym = exact;
        asym.form = OutageForm::asymptotic;
        const double pe = outage_ne(exact, gth);
        const double pa = outage_ne(asym, gth);
        const double gap_out = rel_err(pa, pe);
        const double be = dpsk_ber_quadrature([&](double g) { return outage_ne(exact, g); });
        const BerResult ba = dpsk_ber_ne_asymptotic(link, p, {snr});
        const double gap_ber = rel_err(ba.value, be);
        const bool point_ok = gap_out <= 0.10 && gap_ber <= 0.10;
        ok = ok && point_ok;
        r.details.push_back(fmt("%gdB outage_gap=%.4f ber_gap=%.4f (tol 0.10) %s", db,
                                gap_out, gap_ber, point_ok ? "ok" : "EXCEEDS"));
        if (db == 15.0 || db == 25.0) {
            sim.seed = cfg.seed + 300 + idx++;
            const SimResult s = simulate_link(link, ChannelParams{p}, {snr}, gth, sim);
            r.details.push_back(fmt("%gdB mc_ber=%.6e asym_ber=%.6e mc_gap=%.4f", db,
                                    s.ber_estimate, ba.value,
                                    rel_err(ba.value, s.ber_estimate)));
        }
    }
    r.runtime_s = tm.s();
    r.pass = ok;
    return r;
}

// ---------------------------------------------------------------- C11
CriterionResult c11_series_power(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "11";
    r.name = "series_integer_power vs brute-force convolution";
    RngStream rng(cfg.seed, 777);
    GeneralizedPowerSeries s;
    for (int i = 0; i < 8; ++i)
        s.terms.emplace_back(0.4 * i + 0.2 * rng.uniform(),
                             2.0 * rng.uniform() - 1.0);
    std::sort(s.terms.begin(), s.terms.end());
    double worst = 0.0;
    for (int t = 0; t <= 4; ++t) {
        const auto got = series_integer_power(s, t, 1 << 14);
        // independent oracle: odometer over all index tuples
        std::map<long long, double> brute;   // exponent scaled to a grid key
        std::vector<int> idx(t, 0);
        for (;;) {
            double e = 0.0, c = 1.0;
            for (int j = 0; j < t; ++j) {
                e += s.terms[idx[j]].first;
                c *= s.terms[idx[j]].second;
            }
            brute[std::llround(e * 1e9)] += c;
            int j = t - 1;
            while (j >= 0 && ++idx[j] == 8) idx[j--] = 0;
            if (j < 0) break;
            if (t == 0) break;
        }
        if (t == 0) brute = {{0, 1.0}};
        double d = 0.0;
        size_t gi = 0;
        for (const auto& [key, c] : brute) {
            const double e = key / 1e9;
            if (gi < got.terms.size() &&
                std::fabs(got.terms[gi].first - e) < 1e-6)
                d = std::max(d, std::fabs(got.terms[gi++].second - c));
            else
                d = std::max(d, std::fabs(c));
        }
        worst = std::max(worst, d);
        r.details.push_back(fmt("t=%d terms=%zu max_abs_diff=%.3e", t,
                                got.terms.size(), d));
    }
    r.runtime_s = tm.s();
    r.pass = worst <= 1e-12;
    return r;
}

// ---------------------------------------------------------------- C12
std::string determinism_fingerprint(std::uint64_t seed, std::uint64_t trials,
                                    int workers) {
    LinkConfig link;
    const double snr = db_to_linear(20.0);
    const double gth = db_to_linear(10.0);
    SimConfig sim;
    sim.trials = trials;
    sim.seed = seed;
    sim.workers = workers;
    std::string out;
    const SimResult a =
        simulate_link(link, ChannelParams{moderate_regime(snr)}, {snr}, gth, sim);
    const SimResult b =
        simulate_link(link, ChannelParams{saturate_regime(snr)}, {snr}, gth, sim);
    const SimResult c = simulate_af_branch(AfBranch::rf, link,
                                           ChannelParams{RayleighParams{snr}}, {snr},
                                           0.3 * snr, sim);
    for (const SimResult& s : {a, b, c})
        out += fmt("%.17g %.17g %.17g %.17g %llu\n", s.outage_rate, s.outage_ci95,
                   s.ber_estimate, s.ber_ci95, (unsigned long long)s.trials_used);
    return out;
}

CriterionResult c12_determinism(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "12";
    r.name = "Determinism across worker counts";
    const std::uint64_t trials = cfg.quick ? 100'000 : 400'000;
    const std::string f1 = determinism_fingerprint(cfg.seed, trials, 1);
    const std::string f4 = determinism_fingerprint(cfg.seed, trials, 4);
    const std::string f16 = determinism_fingerprint(cfg.seed, trials, 16);
    r.pass = (f1 == f4) && (f1 == f16);
    r.details.push_back(fmt("workers {1,4,16} fingerprints identical=%d", (int)r.pass));
    for (const auto& line : {f1.substr(0, f1.find('\n'))})
        r.details.push_back("fingerprint[0]: " + line);
    r.runtime_s = tm.s();
    return r;
}

// ---------------------------------------------------------------- mutation
CriterionResult mutation_check(const ValidationConfig& cfg) {
    Timer tm;
    CriterionResult r;
    r.id = "M";
    r.name = "Mutation sanity: perturbed C must break the MC gate";
    // AF-stage-dominated configuration (M = 1, low SNR): the fixed-gain
    // constant moves the outage well beyond the MC noise there
    LinkConfig link;
    link.n_relays = 1;
    const double gth = db_to_linear(10.0);
    const double snr = db_to_linear(10.0);
    LinkConfig mutated = link;
    mutated.fixed_gain_c = 1.1;   // analytic leg only
    OutageRequest req{mutated, ChannelParams{moderate_regime(snr)},
                      RayleighParams{snr}, OutageForm::exact};
    const double a = outage_gg(req, gth);
    OutageRequest clean = req;
    clean.cfg = link;
    const double a0 = outage_gg(clean, gth);
    SimConfig sim;
    sim.trials = cfg.quick ? 200'000 : 2'000'000;
    sim.seed = cfg.seed + 900;
    sim.workers = cfg.workers;
    const SimResult s =
        simulate_link(link, ChannelParams{moderate_regime(snr)}, {snr}, gth, sim);
    const double sigma = std::sqrt(s.outage_rate * (1.0 - s.outage_rate) / s.trials_used);
    const double dev = std::fabs(a - s.outage_rate);
    r.pass = dev > 3.0 * sigma;   // the gate must FAIL under mutation
    r.details.push_back(fmt("analytic(C=1.1)=%.6e analytic(C=1)=%.6e mc(C=1)=%.6e "
                            "dev/sigma=%.2f", a, a0, s.outage_rate,
                            sigma > 0 ? dev / sigma : 0.0));
    r.runtime_s = tm.s();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const ValidationConfig& cfg) {
    std::vector<CriterionResult> out;
    out.push_back(c1_meijer_identities());
    out.push_back(c2_series_equivalence());
    out.push_back(c3_sampler_ks(cfg));
    out.push_back(c4_af_oracle(cfg));
    out.push_back(c5_outage_vs_mc(cfg));
    out.push_back(c6_fig3());
    out.push_back(c7_fig4());
    out.push_back(c8_fig5());
    out.push_back(c9_ber_routes(cfg));
    out.push_back(c10_ne_asymptotic(cfg));
    out.push_back(c11_series_power(cfg));
    out.push_back(c12_determinism(cfg));
    if (cfg.mutation_check) out.push_back(mutation_check(cfg));
    return out;
}

std::string report_json(const std::vector<CriterionResult>& results) {
    nlohmann::ordered_json j;
    j["report"] = "acceptance";
    j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json c;
        c["id"] = r.id;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["details"] = r.details;
        j["criteria"].push_back(c);
    }
    return j.dump(2) + "\n";
}

}  // namespace fsorf
