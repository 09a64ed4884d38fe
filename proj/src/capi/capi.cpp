#include <algorithm>
#include <memory>
#include <cstring>
#include <new>
#include <string>

#include "navier_norms/bihari_batch.hpp"
#include "navier_norms/errors.hpp"
#include "navier_norms/exponent_algebra.hpp"
#include "navier_norms/io.hpp"
#include "navier_norms/navier_norms.h"
#include "navier_norms/spectral.hpp"

namespace nn = navier_norms;

struct nn_curve_table {
    std::string name;
    std::vector<nn::exponents::CurvePoint> points;
};
struct nn_bihari_config {
    nn::inequality::BihariBatchConfig config;
    std::string text;
};
struct nn_bihari_report {
    nn::inequality::BihariBatchReport report;
};
struct nn_sim_config {
    nn::spectral::SolverConfig config;
    std::string text;
};
struct nn_sim_result {
    nn::spectral::SolverConfig config;
    nn::spectral::SimulationResult result;
};
struct nn_trajectory {
    nn::spectral::NormTrajectory traj;
};

namespace {

thread_local std::string last_error;

template <class Fn>
nn_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return NN_OK;
    } catch (const nn::Error& e) {
        last_error = e.what();
        return static_cast<nn_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return NN_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return NN_INTERNAL;
    }
}

void require_arg(bool ok, const char* what) {
    if (!ok) nn::fail(nn::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

nn::ExtRational rational(const char* text, const char* what) {
    require_arg(text != nullptr, what);
    try {
        return nn::ExtRational::parse(text);
    } catch (const nn::Error& e) {
        nn::fail(e.code(), std::string(what) + ": " + e.what());
    }
}

const nn::exponents::CurveSet& curve_set(const std::string& name) {
    if (name == "k0") return nn::exponents::theorem1_branches(0);
    if (name == "k1") return nn::exponents::theorem1_branches(1);
    if (name == "k2") return nn::exponents::theorem1_branches(2);
    return nn::exponents::corollary_branches(nn::exponents::parse_corollary_target(name));
}

void copy_out(const std::string& s, char* buf, size_t cap) {
    if (!buf || cap == 0) return;
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

}  // namespace

extern "C" {

const char* nn_version(void) { return NAVIER_NORMS_VERSION; }

const char* nn_status_name(nn_status status) {
    if (status == NN_INTERNAL) return "Internal";
    if (status < NN_OK || status > NN_IO) return "Unknown";
    return nn::to_string(static_cast<nn::ErrorCode>(static_cast<int>(status)));
}

const char* nn_last_error(void) { return last_error.c_str(); }

nn_status nn_rational_compare(const char* a, const char* b, int* sign) {
    return guarded([&] {
        require_arg(sign != nullptr, "sign");
        const auto x = rational(a, "first value");
        const auto y = rational(b, "second value");
        *sign = x < y ? -1 : (y < x ? 1 : 0);
    });
}

nn_status nn_curve_sample(const char* curve, const char* r_min, const char* r_max, int samples, nn_curve_table** out) {
    return guarded([&] {
        require_arg(curve && out, "curve and out");
        const auto& set = curve_set(curve);
        const auto lo = rational(r_min, "r_min");
        const auto hi = rational(r_max, "r_max");
        auto table = std::make_unique<nn_curve_table>();
        table->name = set.name;
        table->points = nn::exponents::sample_curve(set, lo, hi, samples);
        *out = table.release();
    });
}

size_t nn_curve_table_size(const nn_curve_table* table) { return table ? table->points.size() : 0; }

size_t nn_curve_table_admissible(const nn_curve_table* table) {
    if (!table) return 0;
    return static_cast<size_t>(
        std::count_if(table->points.begin(), table->points.end(), [](const auto& p) { return p.admissible; }));
}

nn_status nn_curve_table_write_csv(const nn_curve_table* table, const char* path) {
    return guarded([&] {
        require_arg(table && path, "table and path");
        nn::io::write_file(path, nn::io::curve_csv(table->points));
    });
}

nn_status nn_curve_table_write_json(const nn_curve_table* table, const char* path) {
    return guarded([&] {
        require_arg(table && path, "table and path");
        nn::io::write_file(path, nn::io::curve_json(table->name, table->points));
    });
}

void nn_curve_table_free(nn_curve_table* table) { delete table; }

nn_status nn_curve_eval(const char* curve, const char* r, char* buf, size_t cap, int* admissible) {
    return guarded([&] {
        require_arg(curve != nullptr, "curve");
        const auto pt = nn::exponents::evaluate_curve(curve_set(curve), rational(r, "r"));
        copy_out(pt.r_tilde ? pt.r_tilde->to_string() : std::string(), buf, cap);
        if (admissible) *admissible = pt.admissible ? 1 : 0;
    });
}

nn_status nn_classify_pair(int k, const char* r, const char* r_tilde, nn_verdict* verdict, char* text, size_t cap) {
    return guarded([&] {
        const auto v = nn::exponents::classify_pair(k, rational(r, "r"), rational(r_tilde, "r_tilde"));
        if (verdict) *verdict = static_cast<nn_verdict>(static_cast<int>(v.kind));
        copy_out(v.text, text, cap);
    });
}

// ---------------------------------------------------------------------------

nn_status nn_bihari_config_default(nn_bihari_config** out) {
    return guarded([&] {
        require_arg(out != nullptr, "out");
        auto c = std::make_unique<nn_bihari_config>();
        c->text = nn::io::to_config_text(c->config);
        *out = c.release();
    });
}

nn_status nn_bihari_config_parse(const char* text, nn_bihari_config** out) {
    return guarded([&] {
        require_arg(text && out, "text and out");
        auto c = std::make_unique<nn_bihari_config>();
        c->config = nn::io::parse_bihari_config(text);
        c->text = nn::io::to_config_text(c->config);
        *out = c.release();
    });
}

nn_status nn_bihari_config_set_seed(nn_bihari_config* config, uint64_t seed) {
    return guarded([&] {
        require_arg(config != nullptr, "config");
        config->config.seed = seed;
        config->text = nn::io::to_config_text(config->config);
    });
}

uint64_t nn_bihari_config_seed(const nn_bihari_config* config) { return config ? config->config.seed : 0; }
const char* nn_bihari_config_text(const nn_bihari_config* config) { return config ? config->text.c_str() : ""; }
void nn_bihari_config_free(nn_bihari_config* config) { delete config; }

nn_status nn_bihari_run(const nn_bihari_config* config, unsigned threads, nn_bihari_report** out) {
    return guarded([&] {
        require_arg(config && out, "config and out");
        auto r = std::make_unique<nn_bihari_report>();
        r->report = nn::inequality::run_bihari_batch(config->config, threads);
        *out = r.release();
    });
}

size_t nn_bihari_report_trials(const nn_bihari_report* report) { return report ? report->report.trials.size() : 0; }
size_t nn_bihari_report_violations(const nn_bihari_report* report) { return report ? report->report.violations : 0; }
double nn_bihari_report_worst_violation(const nn_bihari_report* report) {
    return report ? report->report.worst_violation : 0.0;
}

nn_status nn_bihari_report_write_json(const nn_bihari_report* report, const char* path) {
    return guarded([&] {
        require_arg(report && path, "report and path");
        nn::io::write_file(path, nn::io::bihari_report_json(report->report));
    });
}

void nn_bihari_report_free(nn_bihari_report* report) { delete report; }

// ---------------------------------------------------------------------------

nn_status nn_sim_config_default(nn_sim_config** out) {
    return guarded([&] {
        require_arg(out != nullptr, "out");
        auto c = std::make_unique<nn_sim_config>();
        c->text = nn::io::to_config_text(c->config);
        *out = c.release();
    });
}

nn_status nn_sim_config_parse(const char* text, nn_sim_config** out) {
    return guarded([&] {
        require_arg(text && out, "text and out");
        auto c = std::make_unique<nn_sim_config>();
        c->config = nn::io::parse_solver_config(text);
        c->text = nn::io::to_config_text(c->config);
        *out = c.release();
    });
}

uint64_t nn_sim_config_seed(const nn_sim_config* config) { return config ? config->config.seed : 0; }
const char* nn_sim_config_text(const nn_sim_config* config) { return config ? config->text.c_str() : ""; }
void nn_sim_config_free(nn_sim_config* config) { delete config; }

nn_status nn_simulate(const nn_sim_config* config, nn_sim_result** out) {
    return guarded([&] {
        require_arg(config && out, "config and out");
        auto r = std::make_unique<nn_sim_result>();
        r->config = config->config;
        r->result = nn::spectral::simulate(config->config);
        *out = r.release();
    });
}

int nn_sim_result_steps(const nn_sim_result* result) { return result ? result->result.steps : 0; }

double nn_sim_result_max_divergence(const nn_sim_result* result) {
    if (!result) return 0.0;
    double m = 0.0;
    for (double d : result->result.divergence_history) m = std::max(m, d);
    return m;
}

double nn_sim_result_balance_residual(const nn_sim_result* result) {
    return result ? result->result.energy.balance_residual : 0.0;
}

void nn_sim_result_leray_residuals(const nn_sim_result* result, double* velocity, double* dissipation) {
    if (!result) return;
    if (velocity) *velocity = result->result.energy.leray_residual;
    if (dissipation) *dissipation = result->result.energy.leray_dissipation_residual;
}

int nn_sim_result_cfl_warnings(const nn_sim_result* result) { return result ? result->result.cfl_warnings : 0; }
size_t nn_sim_result_snapshot_count(const nn_sim_result* result) {
    return result ? result->result.snapshots.size() : 0;
}

nn_status nn_sim_result_write_norms_csv(const nn_sim_result* result, const char* path) {
    return guarded([&] {
        require_arg(result && path, "result and path");
        nn::io::write_file(path, nn::io::norm_trajectory_csv(result->result.norms));
    });
}

nn_status nn_sim_result_write_energy_json(const nn_sim_result* result, const char* path) {
    return guarded([&] {
        require_arg(result && path, "result and path");
        nn::io::write_file(path, nn::io::energy_report_json(result->result.energy));
    });
}

nn_status nn_sim_result_write_summary_json(const nn_sim_result* result, const char* path) {
    return guarded([&] {
        require_arg(result && path, "result and path");
        const auto [mixed, weighted] = nn::io::summarize_norms(result->config, result->result);
        nn::io::write_file(path, nn::io::simulation_summary_json(result->config, result->result, mixed, weighted));
    });
}

nn_status nn_sim_result_write_snapshot(const nn_sim_result* result, size_t index, const char* path) {
    return guarded([&] {
        require_arg(result && path, "result and path");
        if (index >= result->result.snapshots.size()) nn::fail(nn::ErrorCode::kOutOfRange, "snapshot index out of range");
        nn::io::write_snapshot(path, result->result.snapshots[index]);
    });
}

void nn_sim_result_free(nn_sim_result* result) { delete result; }

nn_status nn_trajectory_load_csv(const char* path, nn_trajectory** out) {
    return guarded([&] {
        require_arg(path && out, "path and out");
        auto t = std::make_unique<nn_trajectory>();
        t->traj = nn::io::parse_norm_trajectory_csv(nn::io::read_file(path));
        *out = t.release();
    });
}

double nn_trajectory_final_time(const nn_trajectory* traj) {
    return traj && !traj->traj.times.empty() ? traj->traj.times.back() : 0.0;
}

nn_status nn_trajectory_mixed_norm(const nn_trajectory* traj, int k, double r, double r_tilde, double* out) {
    return guarded([&] {
        require_arg(traj && out, "trajectory and out");
        *out = nn::spectral::mixed_norm(traj->traj, k, r, r_tilde);
    });
}

nn_status nn_trajectory_weighted_integral(const nn_trajectory* traj, int k, double r, double theta, double T,
                                          double* out) {
    return guarded([&] {
        require_arg(traj && out, "trajectory and out");
        *out = nn::spectral::weighted_singular_integral(traj->traj, k, r, theta, T);
    });
}

void nn_trajectory_free(nn_trajectory* traj) { delete traj; }

}  // extern "C"
