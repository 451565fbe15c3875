#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fsorf {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    double runtime_s = 0.0;              ///< console diagnostics; never serialized
    std::vector<std::string> details;    ///< deterministic result lines
};

struct ValidationConfig {
    std::uint64_t seed = 20250808;
    std::uint64_t mc_trials = 10'000'000;
    std::uint64_t ks_samples = 1'000'000;
    int workers = 1;
    bool quick = false;           ///< reduced Monte Carlo budgets (smoke runs)
    bool mutation_check = false;  ///< verify the analytic-vs-MC gate can fail
};

/// Run every acceptance criterion; one result per criterion, in order.
std::vector<CriterionResult> run_acceptance(const ValidationConfig& cfg);

/// Deterministic machine-readable report (runtimes excluded by design so that
/// equal-seed runs are byte-identical regardless of worker count).
std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace fsorf
