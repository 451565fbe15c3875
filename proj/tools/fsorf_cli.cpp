// Batch front door: outage / BER sweeps with figure-reproduction presets,
// acceptance validation runs, CSV + gnuplot-script emission.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsorf/ber.hpp"
#include "fsorf/montecarlo.hpp"
#include "fsorf/outage.hpp"
#include "fsorf/presets.hpp"
#include "fsorf/validation.hpp"

namespace {

int workers_from_env() {
    if (const char* w = std::getenv("FSORF_WORKERS")) {
        const int n = std::atoi(w);
        if (n >= 1) return n;
    }
    return 1;
}

struct SweepSpec {
    std::string regime = "moderate";
    int N = 2, M = 2;
    double C = 1.0, eta = 1.0;
    double gamma_th_db = 10.0;
    double snr_start = 10.0, snr_stop = 40.0, snr_step = 2.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::string mode = "independent";
    std::string output;
    std::string plot;
};

void add_sweep_options(CLI::App* cmd, SweepSpec& s, bool with_threshold) {
    cmd->add_option("--regime", s.regime, "moderate | strong | saturate")
        ->check(CLI::IsMember({"moderate", "strong", "saturate"}));
    cmd->add_option("--N", s.N, "receive antennas at the first relay")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--M", s.M, "number of relays")->check(CLI::PositiveNumber);
    cmd->add_option("--C", s.C, "fixed-gain constant")->check(CLI::PositiveNumber);
    cmd->add_option("--eta", s.eta, "optical conversion efficiency")
        ->check(CLI::PositiveNumber);
    if (with_threshold)
        cmd->add_option("--gamma-th-db", s.gamma_th_db, "outage threshold (dB)");
    cmd->add_option("--snr", [&s](const std::vector<std::string>& v) {
            double a, b, c;
            if (std::sscanf(v[0].c_str(), "%lf:%lf:%lf", &a, &b, &c) != 3) return false;
            s.snr_start = a; s.snr_stop = b; s.snr_step = c;
            return true;
        }, "sweep range start:stop:step in dB");
    cmd->add_option("--snr-start", s.snr_start, "sweep start (dB)");
    cmd->add_option("--snr-stop", s.snr_stop, "sweep stop (dB)");
    cmd->add_option("--snr-step", s.snr_step, "sweep step (dB)");
    cmd->add_option("--trials", s.trials, "Monte Carlo trials per point (0 disables)");
    cmd->add_option("--seed", s.seed, "Monte Carlo seed");
    cmd->add_option("--mc-mode", s.mode, "shared | independent gamma1 for the AF stage")
        ->check(CLI::IsMember({"shared", "independent"}));
    cmd->add_option("-o,--output", s.output, "CSV output path");
    cmd->add_option("--plot", s.plot, "emit a gnuplot script alongside the CSV");
}

void check_sweep(const SweepSpec& s) {
    if (s.snr_step <= 0) throw CLI::ValidationError("--snr-step must be positive");
    if (s.snr_start > s.snr_stop)
        throw CLI::ValidationError("--snr-start must not exceed --snr-stop");
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_plot_script(const std::string& path, const std::string& csv,
                       const std::string& ylabel, const std::string& title) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write plot script: " + path);
    f << "set datafile separator ','\n"
      << "set logscale y\n"
      << "set grid\n"
      << "set xlabel 'average SNR (dB)'\n"
      << "set ylabel '" << ylabel << "'\n"
      << "set title '" << title << "'\n"
      << "set key bottom left\n"
      << "plot '" << csv << "' using 1:2 with lines title 'analytic', \\\n"
      << "     '" << csv << "' using 1:5:6 with yerrorbars title 'Monte Carlo'\n";
}

fsorf::LinkConfig make_link(const SweepSpec& s) {
    fsorf::LinkConfig link;
    link.n_antennas = s.N;
    link.n_relays = s.M;
    link.fixed_gain_c = s.C;
    link.eta = s.eta;
    link.gamma_th = fsorf::db_to_linear(s.gamma_th_db);
    return link;
}

int run_outage(const SweepSpec& s) {
    check_sweep(s);
    using namespace fsorf;
    const LinkConfig link = make_link(s);
    const bool saturate = s.regime == "saturate";
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!s.output.empty()) {
        file.open(s.output);
        if (!file) {
            std::cerr << "error: cannot open output file " << s.output << "\n";
            return 1;
        }
        out = &file;
    }
    *out << "gamma_avg_db,outage_exact,outage_expanded,"
         << (saturate ? "outage_asymptotic" : "outage_series")
         << ",mc_estimate,mc_ci95,trials\n";
    SimConfig sim;
    sim.seed = s.seed;
    sim.trials = s.trials;
    sim.workers = workers_from_env();
    sim.mode = s.mode == "shared" ? Gamma1Mode::shared : Gamma1Mode::independent;
    for (double db = s.snr_start; db <= s.snr_stop + 1e-9; db += s.snr_step) {
        const double snr = db_to_linear(db);
        OutageRequest req{link, regime_channel(s.regime, snr), RayleighParams{snr},
                          OutageForm::exact};
        auto eval = [&](OutageForm form) {
            req.form = form;
            return saturate ? outage_ne(req, link.gamma_th)
                            : outage_gg(req, link.gamma_th);
        };
        const double exact = eval(OutageForm::exact);
        const double expanded = eval(OutageForm::expanded);
        const double third =
            eval(saturate ? OutageForm::asymptotic : OutageForm::series);
        std::string mc1 = "nan", mc2 = "nan";
        if (s.trials > 0) {
            const SimResult r =
                simulate_link(link, req.fso, req.rf, link.gamma_th, sim);
            mc1 = num(r.outage_rate);
            mc2 = num(r.outage_ci95);
        }
        *out << num(db) << ',' << num(exact) << ',' << num(expanded) << ','
             << num(third) << ',' << mc1 << ',' << mc2 << ',' << s.trials << "\n";
    }
    if (!s.plot.empty())
        write_plot_script(s.plot, s.output.empty() ? "outage.csv" : s.output,
                          "outage probability",
                          "regime " + s.regime + ", N=" + std::to_string(s.N) +
                              ", M=" + std::to_string(s.M));
    return 0;
}

int run_ber(const SweepSpec& s) {
    check_sweep(s);
    using namespace fsorf;
    const LinkConfig link = make_link(s);
    const bool saturate = s.regime == "saturate";
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!s.output.empty()) {
        file.open(s.output);
        if (!file) {
            std::cerr << "error: cannot open output file " << s.output << "\n";
            return 1;
        }
        out = &file;
    }
    *out << "gamma_avg_db,ber_quadrature,ber_closed_form,closed_form_fallback,"
            "mc_estimate,mc_ci95,trials\n";
    SimConfig sim;
    sim.seed = s.seed;
    sim.trials = s.trials;
    sim.workers = workers_from_env();
    sim.mode = s.mode == "shared" ? Gamma1Mode::shared : Gamma1Mode::independent;
    for (double db = s.snr_start; db <= s.snr_stop + 1e-9; db += s.snr_step) {
        const double snr = db_to_linear(db);
        OutageRequest req{link, regime_channel(s.regime, snr), RayleighParams{snr},
                          saturate ? OutageForm::asymptotic : OutageForm::exact};
        const double quad = dpsk_ber_quadrature([&](double g) {
            return saturate ? outage_ne(req, g) : outage_gg(req, g);
        });
        BerResult closed{0.0, true};
        if (saturate)
            closed = dpsk_ber_ne_asymptotic(link, std::get<NegExpParams>(req.fso),
                                            req.rf);
        else
            closed = dpsk_ber_gg_exact(
                link, std::get<GammaGammaPointingParams>(req.fso), req.rf);
        std::string mc1 = "nan", mc2 = "nan";
        if (s.trials > 0) {
            const SimResult r =
                simulate_link(link, req.fso, req.rf, link.gamma_th, sim);
            mc1 = num(r.ber_estimate);
            mc2 = num(r.ber_ci95);
        }
        *out << num(db) << ',' << num(quad) << ',' << num(closed.value) << ','
             << (closed.used_fallback ? 1 : 0) << ',' << mc1 << ',' << mc2 << ','
             << s.trials << "\n";
    }
    if (!s.plot.empty())
        write_plot_script(s.plot, s.output.empty() ? "ber.csv" : s.output,
                          "bit error rate",
                          "regime " + s.regime + ", N=" + std::to_string(s.N) +
                              ", M=" + std::to_string(s.M));
    return 0;
}

// the spec's flagged reading of the DF-hop CDF kernel: the factored outage
// expression prints G^{3,1}_{2,3} where the CDF (and every other use of the kernel)
// uses G^{3,1}_{2,4}; both readings are evaluated and logged here
void log_df_kernel_readings(std::vector<std::string>& notes) {
    using namespace fsorf;
    const GammaGammaPointingParams p = moderate_regime(db_to_linear(25.0));
    const double xi2 = p.xi2();
    const double w = p.alpha * p.beta * p.kappa() *
                     std::sqrt(db_to_linear(10.0) / p.mean_snr);
    const double pre = xi2 / (std::tgamma(p.alpha) * std::tgamma(p.beta));
    MeijerGSpec g24;
    g24.m = 3; g24.n = 1; g24.p = 2; g24.q = 4;
    g24.a = {1.0, xi2 + 1.0};
    g24.b = {xi2, p.alpha, p.beta, 0.0};
    g24.z = w;
    MeijerGSpec g23 = g24;
    g23.q = 3;
    g23.b = {xi2, p.alpha, p.beta};
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "df-hop kernel readings at moderate 25 dB, gamma_th 10 dB: "
                  "G24 form -> %.9e (matches the series CDF), G23 form -> %.9e",
                  pre * meijer_g(g24), pre * meijer_g(g23));
    notes.push_back(buf);
}

int run_validate(std::uint64_t trials, std::uint64_t ks, std::uint64_t seed,
                 bool quick, bool mutation, const std::string& output) {
    using namespace fsorf;
    ValidationConfig cfg;
    cfg.seed = seed;
    cfg.mc_trials = trials;
    cfg.ks_samples = ks;
    cfg.workers = workers_from_env();
    cfg.quick = quick;
    cfg.mutation_check = mutation;
    auto results = run_acceptance(cfg);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL",
                    r.id.c_str(), r.name.c_str(), r.runtime_s);
        for (const auto& d : r.details) std::printf("        %s\n", d.c_str());
        all = all && r.pass;
    }
    std::vector<std::string> notes;
    log_df_kernel_readings(notes);
    for (const auto& n : notes) std::printf("note: %s\n", n.c_str());
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) {
            std::cerr << "error: cannot open report file " << output << "\n";
            return 1;
        }
        f << report_json(results);
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-hop hybrid FSO/RF relay chain: outage and DPSK BER analysis"};
    app.require_subcommand(1);

    SweepSpec so, sb;
    auto* outage_cmd = app.add_subcommand("outage", "outage-probability sweep");
    add_sweep_options(outage_cmd, so, true);
    auto* ber_cmd = app.add_subcommand("ber", "DPSK bit-error-rate sweep");
    add_sweep_options(ber_cmd, sb, true);

    std::uint64_t vtrials = 10'000'000, vks = 1'000'000, vseed = 20250808;
    bool vquick = false, vmut = false;
    std::string vout;
    auto* val = app.add_subcommand("validate", "run the acceptance suite");
    val->add_option("--trials", vtrials, "Monte Carlo trials per comparison");
    val->add_option("--ks-samples", vks, "samples per KS certification");
    val->add_option("--seed", vseed, "master seed");
    val->add_flag("--quick", vquick, "reduced Monte Carlo budgets");
    val->add_flag("--mutation-check", vmut, "verify the MC gate fails under a perturbed C");
    val->add_option("-o,--output", vout, "machine-readable JSON report path");

    auto* self = app.add_subcommand("selftest", "fast smoke subset of the suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (outage_cmd->parsed()) return run_outage(so);
        if (ber_cmd->parsed()) return run_ber(sb);
        if (val->parsed()) return run_validate(vtrials, vks, vseed, vquick, vmut, vout);
        if (self->parsed()) {
            fsorf::ValidationConfig cfg;
            cfg.quick = true;
            cfg.mc_trials = 200'000;
            cfg.ks_samples = 100'000;
            cfg.workers = workers_from_env();
            bool all = true;
            auto rs = fsorf::run_acceptance(cfg);
            for (const auto& r : rs) {
                std::printf("[%s] criterion %s: %s\n", r.pass ? "PASS" : "FAIL",
                            r.id.c_str(), r.name.c_str());
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
