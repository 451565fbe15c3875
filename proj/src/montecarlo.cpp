#include "fsorf/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fsorf/rng.hpp"

namespace fsorf {

namespace {

constexpr std::uint64_t kChunk = 1 << 16;

struct ChunkAccum {
    std::uint64_t outage = 0;
    double ber_sum = 0.0;
    double ber_sumsq = 0.0;
};

// fixed chunk partition + pairwise reduction keeps results bit-identical for
// any worker count
template <class TrialFn>
SimResult run_trials(const SimConfig& sim, const TrialFn& trial) {
    if (sim.trials < 1) throw std::domain_error("SimConfig: trials must be >= 1");
    if (sim.workers < 1) throw std::domain_error("SimConfig: workers must be >= 1");
    const std::uint64_t n_chunks = (sim.trials + kChunk - 1) / kChunk;
    std::vector<ChunkAccum> acc(n_chunks);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(sim.trials, lo + kChunk);
            ChunkAccum a;
            for (std::uint64_t i = lo; i < hi; ++i) {
                RngStream rng(sim.seed, i);
                const auto [gamma_eq, outage] = trial(rng);
                a.outage += outage ? 1 : 0;
                const double w = 0.5 * std::exp(-gamma_eq);
                a.ber_sum += w;
                a.ber_sumsq += w * w;
            }
            acc[c] = a;
        }
    };
    if (sim.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < sim.workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // pairwise tree reduction in fixed chunk order
    std::vector<ChunkAccum> level = std::move(acc);
    while (level.size() > 1) {
        std::vector<ChunkAccum> up((level.size() + 1) / 2);
        for (size_t i = 0; i < up.size(); ++i) {
            up[i] = level[2 * i];
            if (2 * i + 1 < level.size()) {
                up[i].outage += level[2 * i + 1].outage;
                up[i].ber_sum += level[2 * i + 1].ber_sum;
                up[i].ber_sumsq += level[2 * i + 1].ber_sumsq;
            }
        }
        level = std::move(up);
    }
    const ChunkAccum tot = level.empty() ? ChunkAccum{} : level[0];
    const double n = (double)sim.trials;
    SimResult r;
    r.trials_used = sim.trials;
    r.outage_rate = tot.outage / n;
    r.outage_ci95 = 1.96 * std::sqrt(r.outage_rate * (1.0 - r.outage_rate) / n);
    r.ber_estimate = tot.ber_sum / n;
    const double var =
        std::max(0.0, (tot.ber_sumsq - tot.ber_sum * tot.ber_sum / n) / (n - 1.0));
    r.ber_ci95 = 1.96 * std::sqrt(var / n);
    return r;
}

double max_of_n_rayleigh(RngStream& rng, int n, double mean_snr) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, rng.exponential(mean_snr));
    return m;
}

}  // namespace

SimResult simulate_link(const LinkConfig& cfg, const ChannelParams& fso,
                        const RayleighParams& rf, double gamma_th,
                        const SimConfig& sim) {
    validate(cfg);
    validate(rf);
    if (!(gamma_th > 0)) throw std::domain_error("simulate_link: gamma_th must be positive");
    const double C = cfg.fixed_gain_c;
    return run_trials(sim, [&](RngStream& rng) -> std::pair<double, bool> {
        const double g1 = max_of_n_rayleigh(rng, cfg.n_antennas, rf.mean_snr);
        const double g2f = sample_snr(fso, rng);
        const double g2r = rng.exponential(rf.mean_snr);
        const double g1r = (sim.mode == Gamma1Mode::shared)
                               ? g1
                               : max_of_n_rayleigh(rng, cfg.n_antennas, rf.mean_snr);
        const double af_fso = g1 * g2f / (C + g2f);
        const double af_rf = g1r * g2r / (C + g2r);
        double gamma_eq = std::max(af_fso, af_rf);
        for (int j = 0; j < cfg.n_relays - 1; ++j) {
            const double hop =
                std::max(sample_snr(fso, rng), rng.exponential(rf.mean_snr));
            gamma_eq = std::min(gamma_eq, hop);
        }
        return {gamma_eq, gamma_eq < gamma_th};
    });
}

SimResult simulate_af_branch(AfBranch branch, const LinkConfig& cfg,
                             const ChannelParams& second_hop,
                             const RayleighParams& rf1, double gamma,
                             const SimConfig& sim) {
    validate(cfg);
    validate(rf1);
    if (!(gamma > 0)) throw std::domain_error("simulate_af_branch: gamma must be positive");
    if ((branch == AfBranch::gg &&
         !std::holds_alternative<GammaGammaPointingParams>(second_hop)) ||
        (branch == AfBranch::ne && !std::holds_alternative<NegExpParams>(second_hop)) ||
        (branch == AfBranch::rf && !std::holds_alternative<RayleighParams>(second_hop)))
        throw std::invalid_argument("simulate_af_branch: branch/params mismatch");
    const double C = cfg.fixed_gain_c;
    return run_trials(sim, [&](RngStream& rng) -> std::pair<double, bool> {
        const double g1 = max_of_n_rayleigh(rng, cfg.n_antennas, rf1.mean_snr);
        const double g2 = sample_snr(second_hop, rng);
        const double z = g1 * g2 / (C + g2);
        return {z, z <= gamma};
    });
}

double empirical_cdf(std::span<const double> sorted_samples, double gamma) {
    if (sorted_samples.empty())
        throw std::domain_error("empirical_cdf: sample set must be non-empty");
    const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), gamma);
    return (double)(it - sorted_samples.begin()) / sorted_samples.size();
}

double ks_distance(std::span<const double> sorted_samples,
                   const std::function<double(double)>& cdf) {
    if (sorted_samples.empty())
        throw std::domain_error("ks_distance: sample set must be non-empty");
    const double n = (double)sorted_samples.size();
    double d = 0.0;
    for (size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = cdf(sorted_samples[i]);
        d = std::max(d, std::fabs(f - i / n));
        d = std::max(d, std::fabs(f - (i + 1) / n));
    }
    return d;
}

}  // namespace fsorf
