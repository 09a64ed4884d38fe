#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace navier_norms::inequality {

/// Random Bihari-LaSalle trials checked against their Volterra oracle solution.
struct BihariBatchConfig {
    std::size_t n = 256;
    double T = 1.0;
    double beta_min = 0.0;
    double beta_max = 0.9;
    double gamma_min = 0.2;
    double gamma_max = 1.0;
    std::uint64_t seed = 20240601;
    std::size_t trials = 500;
    double tolerance = 1e-6;  // allowed relative excess of phi* over K*

    /// Throws kInvalidArgument naming the offending key.
    void validate() const;
};

struct BihariTrial {
    std::size_t trial = 0;
    double beta = 0.0;
    double gamma = 0.0;
    bool verified = false;
    double max_violation = 0.0;
    std::size_t worst_node = 0;
    double hypothesis_margin = 0.0;
    int iterations = 0;
    double residual = 0.0;
    std::string error;  // non-empty when the trial could not be evaluated
};

struct BihariBatchReport {
    BihariBatchConfig config;
    std::vector<BihariTrial> trials;
    std::size_t violations = 0;  // unverified or failed trials
    double worst_violation = 0.0;
    std::size_t worst_trial = 0;
};

/// Worker count: hardware concurrency, capped by NAVIER_NORMS_THREADS when set.
unsigned worker_count();

/// Trial i draws from its own generator seeded by (seed, i), so the report
/// does not depend on the number of threads.
BihariBatchReport run_bihari_batch(const BihariBatchConfig& config, unsigned threads = 0);

}  // namespace navier_norms::inequality
