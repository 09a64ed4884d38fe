#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "navier_norms/bihari_batch.hpp"
#include "navier_norms/exponent_algebra.hpp"
#include "navier_norms/spectral.hpp"

namespace navier_norms::io {

/// Shortest decimal that round-trips; "inf" and "-inf" for infinities.
std::string format_double(double x);
/// 17 significant digits.
std::string format_double17(double x);
/// Accepts anything std::from_chars accepts plus "inf"; throws kParse.
double parse_double(std::string_view text, std::string_view what);

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

/// "key = value" lines; '#' starts a comment. Duplicate keys and lines without
/// '=' throw kParse with the line number.
std::vector<KeyValue> parse_key_values(std::string_view text);

spectral::SolverConfig parse_solver_config(std::string_view text);
std::string to_config_text(const spectral::SolverConfig& config);

inequality::BihariBatchConfig parse_bihari_config(std::string_view text);
std::string to_config_text(const inequality::BihariBatchConfig& config);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// ---------------------------------------------------------------------------

/// Columns k,r_num,r_den,rtilde_num,rtilde_den,admissible,open_bound,branch_id.
/// Infinity is 1/0; an undefined r~ leaves both fields empty.
std::string curve_csv(const std::vector<exponents::CurvePoint>& points);
std::string curve_json(const std::string& name, const std::vector<exponents::CurvePoint>& points);

/// Columns t,k,r,value.
std::string norm_trajectory_csv(const spectral::NormTrajectory& traj);
spectral::NormTrajectory parse_norm_trajectory_csv(std::string_view text);

std::string energy_report_json(const spectral::EnergyReport& report);
std::string bihari_report_json(const inequality::BihariBatchReport& report);

struct MixedNormEntry {
    int k = 0;
    double r = 0.0;
    double r_tilde = 0.0;
    double value = 0.0;
    std::string verdict;
};

struct WeightedEntry {
    int k = 0;
    double r = 0.0;
    double theta = 0.0;
    double value = 0.0;
    bool integrable = true;
};

/// Mixed norm of each requested (k, r) at the Theorem-1 time exponent for r
/// (the sup when that exponent is infinite, r~ = 1 with an "inadmissible"
/// verdict when no admissible exponent exists), and the weighted integral for
/// every (k, r, theta).
std::pair<std::vector<MixedNormEntry>, std::vector<WeightedEntry>> summarize_norms(
    const spectral::SolverConfig& config, const spectral::SimulationResult& result);

std::string simulation_summary_json(const spectral::SolverConfig& config, const spectral::SimulationResult& result,
                                    const std::vector<MixedNormEntry>& mixed,
                                    const std::vector<WeightedEntry>& weighted);

// ---------------------------------------------------------------------------

/// Binary layout, little-endian: magic "NNSNAP\0\0", u32 version (1), u32 N,
/// u32 nz, u32 components, f64 time, f64 nu, then for each component the
/// N x N x nz coefficients as interleaved (re, im) f64 pairs.
void write_snapshot(const std::filesystem::path& path, const spectral::TimedField& snapshot);
spectral::TimedField read_snapshot(const std::filesystem::path& path);

}  // namespace navier_norms::io
