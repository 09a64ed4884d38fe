#include "navier_norms/bihari_batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "navier_norms/errors.hpp"
#include "navier_norms/inequality_kit.hpp"

namespace navier_norms::inequality {

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) fail(ErrorCode::kInvalidArgument, key + ": " + what);
}

BihariTrial run_trial(const BihariBatchConfig& cfg, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BihariTrial t;
    t.trial = index;
    t.beta = cfg.beta_min + (cfg.beta_max - cfg.beta_min) * u(rng);
    t.gamma = cfg.gamma_min + (cfg.gamma_max - cfg.gamma_min) * u(rng);
    t.gamma = std::clamp(t.gamma, std::nextafter(0.0, 1.0), 1.0);
    try {
        const BihariInstance inst = random_bihari_instance(rng, cfg.n, cfg.T, t.beta, t.gamma);
        const VolterraSolution sol = volterra_oracle(inst);
        const BihariReport rep = bihari_verify(inst, sol.phi, HypothesisMode::kAllowEquality, cfg.tolerance);
        t.verified = rep.verified;
        t.max_violation = rep.max_violation;
        t.worst_node = rep.worst_node;
        t.hypothesis_margin = rep.hypothesis_margin;
        t.iterations = sol.iterations;
        t.residual = sol.residual;
    } catch (const Error& e) {
        t.verified = false;
        t.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    return t;
}

}  // namespace

void BihariBatchConfig::validate() const {
    require(n >= 1, "n", "must be >= 1");
    require(T > 0.0 && std::isfinite(T), "T", "must be positive");
    require(beta_min >= 0.0 && beta_min <= beta_max, "beta", "range must satisfy 0 <= min <= max");
    require(beta_max < 1.0, "beta", "must be < 1");
    require(gamma_min > 0.0 && gamma_min <= gamma_max, "gamma", "range must satisfy 0 < min <= max");
    require(gamma_max <= 1.0, "gamma", "must be <= 1");
    require(trials >= 1, "trials", "must be >= 1");
    require(tolerance >= 0.0 && std::isfinite(tolerance), "tolerance", "must be >= 0");
}

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NAVIER_NORMS_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

BihariBatchReport run_bihari_batch(const BihariBatchConfig& config, unsigned threads) {
    config.validate();
    BihariBatchReport report;
    report.config = config;
    report.trials.resize(config.trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads ? threads : worker_count(),
                                                             static_cast<unsigned>(config.trials)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) report.trials[i] = run_trial(config, i);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (const auto& t : report.trials) {
        if (!t.verified) ++report.violations;
        if (t.error.empty() && t.max_violation > report.worst_violation) {
            report.worst_violation = t.max_violation;
            report.worst_trial = t.trial;
        }
    }
    return report;
}

}  // namespace navier_norms::inequality
