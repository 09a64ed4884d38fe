#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "navier_norms/errors.hpp"
#include "navier_norms/io.hpp"

namespace navier_norms::io {

using json = nlohmann::ordered_json;

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json rational_json(const ExtRational& q) {
    return json{{"num", q.numerator_string()}, {"den", q.denominator_string()}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string curve_csv(const std::vector<exponents::CurvePoint>& points) {
    std::ostringstream o;
    o << "k,r_num,r_den,rtilde_num,rtilde_den,admissible,open_bound,branch_id\n";
    for (const auto& p : points) {
        o << p.k << ',' << p.r.numerator_string() << ',' << p.r.denominator_string() << ',';
        if (p.r_tilde) o << p.r_tilde->numerator_string() << ',' << p.r_tilde->denominator_string();
        else o << ',';
        o << ',' << (p.admissible ? "true" : "false") << ',' << (p.open_bound ? "true" : "false") << ','
          << p.branch_id << '\n';
    }
    return o.str();
}

std::string curve_json(const std::string& name, const std::vector<exponents::CurvePoint>& points) {
    json arr = json::array();
    for (const auto& p : points) {
        arr.push_back(json{{"k", p.k},
                           {"r", rational_json(p.r)},
                           {"r_tilde", p.r_tilde ? rational_json(*p.r_tilde) : json(nullptr)},
                           {"admissible", p.admissible},
                           {"open_bound", p.open_bound},
                           {"branch_id", p.branch_id},
                           {"reason", p.reason}});
    }
    return json{{"curve", name}, {"points", arr}}.dump(2) + "\n";
}

std::string norm_trajectory_csv(const spectral::NormTrajectory& traj) {
    std::ostringstream o;
    o << "t,k,r,value\n";
    for (const auto& s : traj.samples)
        o << format_double17(s.t) << ',' << s.k << ',' << format_double(s.r) << ',' << format_double17(s.value) << '\n';
    return o.str();
}

spectral::NormTrajectory parse_norm_trajectory_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"t", "k", "r", "value"})
        fail(ErrorCode::kParse, "trajectory CSV must start with the header t,k,r,value");
    spectral::NormTrajectory traj;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected 4 fields");
        spectral::NormSample s;
        const std::string where = "line " + std::to_string(lineno);
        s.t = parse_double(f[0], where + " t");
        const double k = parse_double(f[1], where + " k");
        if (k != 0.0 && k != 1.0 && k != 2.0) fail(ErrorCode::kParse, where + ": k must be 0, 1 or 2");
        s.k = static_cast<int>(k);
        s.r = parse_double(f[2], where + " r");
        s.value = parse_double(f[3], where + " value");
        if (!(s.value >= 0.0)) fail(ErrorCode::kParse, where + ": norm values must be >= 0");
        if (traj.times.empty() || s.t > traj.times.back()) traj.times.push_back(s.t);
        else if (s.t < traj.times.back()) fail(ErrorCode::kParse, where + ": times must be non-decreasing");
        traj.samples.push_back(s);
    }
    if (traj.samples.empty()) fail(ErrorCode::kMissingSamples, "trajectory CSV has no samples");
    return traj;
}

std::string energy_report_json(const spectral::EnergyReport& r) {
    json j{{"times", r.times},
           {"energy", r.energy},
           {"dissipation", r.dissipation},
           {"forcing_work", r.forcing_work},
           {"forcing_norm", r.forcing_norm},
           {"balance_residual", number_or_null(r.balance_residual)},
           {"leray_residuals",
            {{"velocity", number_or_null(r.leray_residual)},
             {"dissipation", number_or_null(r.leray_dissipation_residual)}}},
           {"integrated_gradient_l2_squared", number_or_null(r.integrated_gradient_l2_squared)}};
    return j.dump(2) + "\n";
}

std::string bihari_report_json(const inequality::BihariBatchReport& r) {
    json trials = json::array();
    for (const auto& t : r.trials) {
        json e{{"trial", t.trial},
               {"beta", t.beta},
               {"gamma", t.gamma},
               {"verified", t.verified},
               {"max_violation", number_or_null(t.max_violation)},
               {"worst_node", t.worst_node},
               {"hypothesis_margin", number_or_null(t.hypothesis_margin)},
               {"iterations", t.iterations},
               {"residual", number_or_null(t.residual)}};
        if (!t.error.empty()) e["error"] = t.error;
        trials.push_back(std::move(e));
    }
    json j{{"config", to_config_text(r.config)},
           {"trials_run", r.trials.size()},
           {"violations", r.violations},
           {"worst_violation", number_or_null(r.worst_violation)},
           {"worst_trial", r.worst_trial},
           {"trials", trials}};
    return j.dump(2) + "\n";
}

std::pair<std::vector<MixedNormEntry>, std::vector<WeightedEntry>> summarize_norms(
    const spectral::SolverConfig& config, const spectral::SimulationResult& result) {
    std::vector<MixedNormEntry> mixed;
    std::vector<WeightedEntry> weighted;
    for (const auto& req : config.norms) {
        MixedNormEntry m;
        m.k = req.k;
        m.r = req.r;
        const ExtRational r_exact = std::isinf(req.r) ? ExtRational::infinity() : ExtRational::parse(format_double(req.r));
        const exponents::CurvePoint pt = exponents::evaluate_curve(exponents::theorem1_branches(req.k), r_exact);
        if (pt.admissible) {
            m.r_tilde = pt.r_tilde->to_double();
            m.verdict = "on Theorem-1 curve (branch " + pt.branch_id + ")";
        } else {
            m.r_tilde = 1.0;
            m.verdict = "inadmissible: " + pt.reason;
        }
        m.value = spectral::mixed_norm(result.norms, req.k, req.r, m.r_tilde);
        mixed.push_back(m);
        for (double theta : config.thetas) {
            WeightedEntry w;
            w.k = req.k;
            w.r = req.r;
            w.theta = theta;
            w.integrable = theta < 1.0;
            if (w.integrable) w.value = spectral::weighted_singular_integral(result.norms, req.k, req.r, theta, config.T);
            weighted.push_back(w);
        }
    }
    return {mixed, weighted};
}

std::string simulation_summary_json(const spectral::SolverConfig& config, const spectral::SimulationResult& result,
                                    const std::vector<MixedNormEntry>& mixed,
                                    const std::vector<WeightedEntry>& weighted) {
    double max_div = 0.0;
    for (double d : result.divergence_history) max_div = std::max(max_div, d);
    json m = json::array();
    for (const auto& e : mixed)
        m.push_back(json{{"k", e.k},
                         {"r", format_double(e.r)},
                         {"r_tilde", format_double(e.r_tilde)},
                         {"value", number_or_null(e.value)},
                         {"verdict", e.verdict}});
    json w = json::array();
    for (const auto& e : weighted)
        w.push_back(json{{"k", e.k},
                         {"r", format_double(e.r)},
                         {"theta", e.theta},
                         {"integrable", e.integrable},
                         {"value", e.integrable ? number_or_null(e.value) : json(nullptr)}});
    json j{{"config", to_config_text(config)},
           {"steps", result.steps},
           {"samples", result.norms.times.size()},
           {"max_divergence", max_div},
           {"max_cfl", result.max_cfl},
           {"cfl_warnings", result.cfl_warnings},
           {"energy_balance_residual", number_or_null(result.energy.balance_residual)},
           {"leray_residuals",
            {{"velocity", number_or_null(result.energy.leray_residual)},
             {"dissipation", number_or_null(result.energy.leray_dissipation_residual)}}},
           {"mixed_norms", m},
           {"weighted_integrals", w},
           {"note", "periodic-box diagnostics; stability under refinement only"}};
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'N', 'N', 'S', 'N', 'A', 'P', '\0', '\0'};
constexpr std::uint32_t kSnapshotVersion = 1;

template <class T>
void put_le(std::ostream& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in, const std::string& what) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
        fail(ErrorCode::kParse, "snapshot truncated while reading " + what);
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const spectral::TimedField& snapshot) {
    std::ostringstream out(std::ios::binary);
    const auto& f = snapshot.field;
    out.write(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, kSnapshotVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.N()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.nz()));
    put_le<std::uint32_t>(out, 3);
    put_le<double>(out, snapshot.t);
    put_le<double>(out, f.nu());
    for (int c = 0; c < 3; ++c)
        for (const auto& v : f.component(c)) {
            put_le<double>(out, v.real());
            put_le<double>(out, v.imag());
        }
    write_file(path, out.str());
}

spectral::TimedField read_snapshot(const std::filesystem::path& path) {
    std::istringstream in(read_file(path), std::ios::binary);
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        fail(ErrorCode::kParse, path.string() + " is not a snapshot file");
    const auto version = get_le<std::uint32_t>(in, "version");
    if (version != kSnapshotVersion) fail(ErrorCode::kParse, "unsupported snapshot version " + std::to_string(version));
    const auto N = get_le<std::uint32_t>(in, "N");
    const auto nz = get_le<std::uint32_t>(in, "nz");
    const auto comps = get_le<std::uint32_t>(in, "component count");
    const double t = get_le<double>(in, "time");
    const double nu = get_le<double>(in, "nu");
    if (N > 4096 || nz != N / 2 + 1 || comps != 3) fail(ErrorCode::kParse, "inconsistent snapshot header");
    spectral::TimedField out{t, spectral::SpectralField(static_cast<int>(N), nu)};
    for (int c = 0; c < 3; ++c)
        for (auto& v : out.field.component(c)) {
            const double re = get_le<double>(in, "coefficients");
            const double im = get_le<double>(in, "coefficients");
            v = {re, im};
        }
    if (in.peek() != std::char_traits<char>::eof()) fail(ErrorCode::kParse, "trailing bytes after snapshot payload");
    return out;
}

}  // namespace navier_norms::io
