#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "navier_norms/navier_norms.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitBlowUp = 4;

struct Failure {
    int exit_code;
    std::string message;
};

int exit_code_for(nn_status s) {
    if (s == NN_OK) return kExitOk;
    if (s == NN_NON_FINITE) return kExitBlowUp;
    if (s == NN_INTERNAL) return kExitInternal;
    return kExitUsage;
}

void check(nn_status s, const std::string& context) {
    if (s == NN_OK) return;
    throw Failure{exit_code_for(s), context + ": " + nn_status_name(s) + ": " + nn_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{kExitUsage, message}; }

std::string slurp(const std::string& path, const std::string& flag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) usage(flag + ": cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitUsage, "cannot write '" + path.string() + "'"};
    out << text;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

class Manifest {
public:
    Manifest(std::string subcommand, int argc, char** argv)
        : subcommand_(std::move(subcommand)), start_(std::chrono::steady_clock::now()), started_at_(utc_now()) {
        for (int i = 0; i < argc; ++i) args_.emplace_back(argv[i]);
    }
    void config(std::string text) { config_ = std::move(text); }
    void seed(std::uint64_t s) { seed_ = s; }
    void output(const fs::path& p) { outputs_.push_back(p.string()); }
    void result(json r) { result_ = std::move(r); }

    void write(const fs::path& path) const {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json j{{"subcommand", subcommand_},
               {"tool_version", nn_version()},
               {"config", config_},
               {"seed", seed_ ? json(*seed_) : json(nullptr)},
               {"outputs", outputs_},
               {"arguments", args_},
               {"started_at", started_at_},
               {"wall_clock_seconds", seconds},
               {"result", result_}};
        write_text(path, j.dump(2) + "\n");
    }

private:
    std::string subcommand_;
    std::chrono::steady_clock::time_point start_;
    std::string started_at_;
    std::string config_;
    std::optional<std::uint64_t> seed_;
    std::vector<std::string> outputs_;
    std::vector<std::string> args_;
    json result_ = json::object();
};

fs::path manifest_path(const std::string& flag, const fs::path& beside) {
    if (!flag.empty()) return flag;
    return fs::path(beside.string() + ".manifest.json");
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---------------------------------------------------------------------------

struct CurvesArgs {
    std::optional<int> k;
    std::string target;
    std::string r_min, r_max;
    int samples = 200;
    std::string out = "curve.csv";
    std::string json_out;
    std::string manifest;
};

int run_curves(const CurvesArgs& a, Manifest& m) {
    if (a.k && !a.target.empty()) usage("--k and --target are mutually exclusive");
    if (!a.k && a.target.empty()) usage("one of --k or --target is required");
    if (a.k && (*a.k < 0 || *a.k > 2)) usage("--k must be 0, 1 or 2");
    const std::string curve = a.k ? "k" + std::to_string(*a.k) : a.target;
    int sign = 0;
    if (nn_rational_compare(a.r_min.c_str(), a.r_min.c_str(), &sign) != NN_OK)
        usage("--r-min: " + std::string(nn_last_error()));
    if (nn_rational_compare(a.r_max.c_str(), a.r_max.c_str(), &sign) != NN_OK)
        usage("--r-max: " + std::string(nn_last_error()));
    check(nn_rational_compare(a.r_min.c_str(), a.r_max.c_str(), &sign), "curves");
    if (sign >= 0) usage("--r-min must be smaller than --r-max");
    if (a.samples < 2) usage("--samples must be at least 2");

    std::ostringstream cfg;
    cfg << "curve = " << curve << "\nr_min = " << a.r_min << "\nr_max = " << a.r_max << "\nsamples = " << a.samples
        << '\n';
    m.config(cfg.str());

    nn_curve_table* table = nullptr;
    const nn_status s = nn_curve_sample(curve.c_str(), a.r_min.c_str(), a.r_max.c_str(), a.samples, &table);
    if (s != NN_OK) {
        const std::string msg = nn_last_error();
        if (msg.rfind("unknown corollary target", 0) == 0) usage("--target: " + msg);
        check(s, "curves");
    }
    std::unique_ptr<nn_curve_table, decltype(&nn_curve_table_free)> guard(table, nn_curve_table_free);

    if (ends_with(a.out, ".json")) check(nn_curve_table_write_json(table, a.out.c_str()), "writing " + a.out);
    else check(nn_curve_table_write_csv(table, a.out.c_str()), "writing " + a.out);
    m.output(a.out);
    if (!a.json_out.empty()) {
        check(nn_curve_table_write_json(table, a.json_out.c_str()), "writing " + a.json_out);
        m.output(a.json_out);
    }
    const size_t n = nn_curve_table_size(table), ok = nn_curve_table_admissible(table);
    m.result({{"rows", n}, {"admissible", ok}});
    std::cout << curve << ": " << n << " rows (" << ok << " admissible) -> " << a.out << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct BihariArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "bihari_report.json";
    unsigned threads = 0;
    std::string manifest;
};

int run_bihari(const BihariArgs& a, Manifest& m) {
    const std::string text = slurp(a.config, "--config");
    nn_bihari_config* cfg = nullptr;
    check(nn_bihari_config_parse(text.c_str(), &cfg), "--config " + a.config);
    std::unique_ptr<nn_bihari_config, decltype(&nn_bihari_config_free)> cg(cfg, nn_bihari_config_free);
    if (a.seed) check(nn_bihari_config_set_seed(cfg, *a.seed), "--seed");
    m.config(nn_bihari_config_text(cfg));
    m.seed(nn_bihari_config_seed(cfg));

    nn_bihari_report* rep = nullptr;
    check(nn_bihari_run(cfg, a.threads, &rep), "bihari");
    std::unique_ptr<nn_bihari_report, decltype(&nn_bihari_report_free)> rg(rep, nn_bihari_report_free);
    check(nn_bihari_report_write_json(rep, a.out.c_str()), "writing " + a.out);
    m.output(a.out);

    const size_t trials = nn_bihari_report_trials(rep), bad = nn_bihari_report_violations(rep);
    const double worst = nn_bihari_report_worst_violation(rep);
    m.result({{"trials", trials}, {"violations", bad}, {"worst_violation", std::isfinite(worst) ? json(worst) : json(nullptr)}});
    std::cout << "bihari: " << trials << " trials, " << bad << " violations, worst relative excess " << worst << '\n';
    if (bad > 0) {
        std::cerr << "error: " << bad << " trial(s) exceed the tolerance; see " << a.out << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out_dir = "run";
    std::string manifest;
};

int run_simulate(const SimulateArgs& a, Manifest& m) {
    const std::string text = slurp(a.config, "--config");
    nn_sim_config* cfg = nullptr;
    check(nn_sim_config_parse(text.c_str(), &cfg), "--config " + a.config);
    std::unique_ptr<nn_sim_config, decltype(&nn_sim_config_free)> cg(cfg, nn_sim_config_free);
    m.config(nn_sim_config_text(cfg));
    m.seed(nn_sim_config_seed(cfg));

    nn_sim_result* res = nullptr;
    const nn_status s = nn_simulate(cfg, &res);
    if (s == NN_NON_FINITE) {
        m.result({{"status", "blow-up"}, {"message", nn_last_error()}});
        std::cerr << "error: numerical blow-up: " << nn_last_error() << '\n';
        return kExitBlowUp;
    }
    check(s, "simulate");
    std::unique_ptr<nn_sim_result, decltype(&nn_sim_result_free)> rg(res, nn_sim_result_free);

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path norms = dir / "norms.csv", energy = dir / "energy.json", summary = dir / "summary.json";
    check(nn_sim_result_write_norms_csv(res, norms.c_str()), "writing " + norms.string());
    check(nn_sim_result_write_energy_json(res, energy.c_str()), "writing " + energy.string());
    check(nn_sim_result_write_summary_json(res, summary.c_str()), "writing " + summary.string());
    m.output(norms);
    m.output(energy);
    m.output(summary);
    for (size_t i = 0; i < nn_sim_result_snapshot_count(res); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%04zu.nns", i);
        const fs::path p = dir / "snapshots" / name;
        fs::create_directories(p.parent_path());
        check(nn_sim_result_write_snapshot(res, i, p.c_str()), "writing " + p.string());
        m.output(p);
    }
    double lv = 0.0, ld = 0.0;
    nn_sim_result_leray_residuals(res, &lv, &ld);
    m.result({{"steps", nn_sim_result_steps(res)},
              {"max_divergence", nn_sim_result_max_divergence(res)},
              {"energy_balance_residual", nn_sim_result_balance_residual(res)},
              {"leray_residuals", {lv, ld}},
              {"cfl_warnings", nn_sim_result_cfl_warnings(res)}});
    std::cout << "simulate: " << nn_sim_result_steps(res) << " steps, max divergence "
              << nn_sim_result_max_divergence(res) << ", energy balance residual "
              << nn_sim_result_balance_residual(res) << ", Leray residuals " << lv << ", " << ld << '\n'
              << "wrote " << norms.string() << ", " << energy.string() << ", " << summary.string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct NormsArgs {
    std::string trajectory;
    int k = 0;
    std::string r;
    std::vector<std::string> r_tildes;
    std::vector<double> thetas;
    std::optional<double> T;
    std::string out;
    std::string manifest;
};

double to_double(const std::string& text, const std::string& flag) {
    if (text == "inf" || text == "+inf" || text == "∞") return INFINITY;
    const auto slash = text.find('/');
    try {
        size_t used = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(text.substr(0, slash), &used);
            const double den = std::stod(text.substr(slash + 1));
            return num / den;
        }
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        usage(flag + ": cannot parse '" + text + "'");
    }
}

int run_norms(const NormsArgs& a, Manifest& m) {
    if (a.k < 0 || a.k > 2) usage("--k must be 0, 1 or 2");
    int sign = 0;
    if (nn_rational_compare(a.r.c_str(), a.r.c_str(), &sign) != NN_OK) usage("--r: " + std::string(nn_last_error()));
    for (const auto& rt : a.r_tildes)
        if (nn_rational_compare(rt.c_str(), rt.c_str(), &sign) != NN_OK)
            usage("--rtilde: " + std::string(nn_last_error()));
    for (double th : a.thetas)
        if (!(th < 1.0))
            throw Failure{kExitUsage, "--theta " + std::to_string(th) + ": " + nn_status_name(NN_NON_INTEGRABLE) +
                                          ": (T - t)^{-theta} is not integrable for theta >= 1"};

    std::ostringstream cfg;
    cfg << "trajectory = " << a.trajectory << "\nk = " << a.k << "\nr = " << a.r << "\nrtilde =";
    for (const auto& rt : a.r_tildes) cfg << ' ' << rt;
    cfg << "\ntheta =";
    for (double th : a.thetas) cfg << ' ' << th;
    cfg << '\n';
    if (a.T) cfg << "T = " << *a.T << '\n';
    m.config(cfg.str());

    nn_trajectory* traj = nullptr;
    check(nn_trajectory_load_csv(a.trajectory.c_str(), &traj), "--trajectory " + a.trajectory);
    std::unique_ptr<nn_trajectory, decltype(&nn_trajectory_free)> tg(traj, nn_trajectory_free);
    const double T = a.T ? *a.T : nn_trajectory_final_time(traj);
    const double r = to_double(a.r, "--r");

    std::vector<std::string> r_tildes = a.r_tildes;
    if (r_tildes.empty()) {
        char buf[256];
        int admissible = 0;
        check(nn_curve_eval(("k" + std::to_string(a.k)).c_str(), a.r.c_str(), buf, sizeof buf, &admissible), "--r");
        if (admissible) r_tildes.emplace_back(buf);
        else if (a.thetas.empty()) usage("--rtilde: no admissible default at this --r; pass --rtilde explicitly");
    }

    json mixed = json::array(), weighted = json::array();
    for (const auto& rt : r_tildes) {
        nn_verdict verdict{};
        char text[512];
        check(nn_classify_pair(a.k, a.r.c_str(), rt.c_str(), &verdict, text, sizeof text), "--rtilde " + rt);
        double value = 0.0;
        check(nn_trajectory_mixed_norm(traj, a.k, r, to_double(rt, "--rtilde"), &value), "mixed norm");
        std::cout << "mixed norm k=" << a.k << " r=" << a.r << " rtilde=" << rt << ": " << value << "  [" << text
                  << "]\n";
        mixed.push_back({{"k", a.k}, {"r", a.r}, {"r_tilde", rt}, {"value", value}, {"verdict", text}});
    }
    for (double th : a.thetas) {
        double value = 0.0;
        check(nn_trajectory_weighted_integral(traj, a.k, r, th, T, &value), "--theta");
        std::cout << "weighted integral k=" << a.k << " r=" << a.r << " theta=" << th << " T=" << T << ": " << value
                  << '\n';
        weighted.push_back({{"k", a.k}, {"r", a.r}, {"theta", th}, {"T", T}, {"value", value}});
    }
    const json report{{"mixed_norms", mixed}, {"weighted_integrals", weighted}};
    if (!a.out.empty()) {
        write_text(a.out, report.dump(2) + "\n");
        m.output(a.out);
    }
    m.result(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponent curves, Bihari-LaSalle checks and Navier-Stokes norm diagnostics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nn_version()));

    CurvesArgs ca;
    auto* curves = app.add_subcommand("curves", "tabulate an admissibility curve");
    curves->add_option("--k", ca.k, "derivative order of the main estimate (0, 1, 2)");
    curves->add_option("--target", ca.target, "improved curve: grad2, grad1 or velocity");
    curves->add_option("--r-min", ca.r_min, "first r (exact: 21/20, 1.05, inf)")->required();
    curves->add_option("--r-max", ca.r_max, "last r")->required();
    curves->add_option("--samples", ca.samples, "number of rows")->capture_default_str();
    curves->add_option("--out", ca.out, "CSV output (JSON when the name ends in .json)")->capture_default_str();
    curves->add_option("--json", ca.json_out, "additional JSON output");
    curves->add_option("--manifest", ca.manifest, "manifest path (default <out>.manifest.json)");

    BihariArgs ba;
    auto* bihari = app.add_subcommand("bihari", "random Bihari-LaSalle trials against the Volterra oracle");
    bihari->add_option("--config", ba.config, "key = value config")->required();
    bihari->add_option("--seed", ba.seed, "override the config seed");
    bihari->add_option("--out", ba.out, "JSON report")->capture_default_str();
    bihari->add_option("--threads", ba.threads, "worker threads (0: NAVIER_NORMS_THREADS or all cores)");
    bihari->add_option("--manifest", ba.manifest, "manifest path (default <out>.manifest.json)");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "run the periodic Navier-Stokes solver");
    simulate->add_option("--config", sa.config, "key = value config")->required();
    simulate->add_option("--out-dir", sa.out_dir, "output directory")->capture_default_str();
    simulate->add_option("--manifest", sa.manifest, "manifest path (default <out-dir>/manifest.json)");

    NormsArgs na;
    auto* norms = app.add_subcommand("norms", "mixed norms and weighted integrals of a saved trajectory");
    norms->add_option("--trajectory", na.trajectory, "norms.csv written by simulate")->required();
    norms->add_option("--k", na.k, "derivative order")->required();
    norms->add_option("--r", na.r, "space exponent")->required();
    norms->add_option("--rtilde", na.r_tildes, "time exponent(s); default: the main-estimate value at r");
    norms->add_option("--theta", na.thetas, "weight exponent(s) for the singular integral");
    norms->add_option("--T", na.T, "final time (default: last sample)");
    norms->add_option("--out", na.out, "JSON output");
    norms->add_option("--manifest", na.manifest, "manifest path (default <trajectory>.norms.manifest.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Manifest manifest(name, argc, argv);
    fs::path manifest_file;
    int code = kExitOk;
    try {
        if (name == "curves") {
            manifest_file = manifest_path(ca.manifest, ca.out);
            code = run_curves(ca, manifest);
        } else if (name == "bihari") {
            manifest_file = manifest_path(ba.manifest, ba.out);
            code = run_bihari(ba, manifest);
        } else if (name == "simulate") {
            manifest_file = sa.manifest.empty() ? fs::path(sa.out_dir) / "manifest.json" : fs::path(sa.manifest);
            code = run_simulate(sa, manifest);
        } else {
            manifest_file = na.manifest.empty() ? fs::path(na.trajectory + ".norms.manifest.json") : fs::path(na.manifest);
            code = run_norms(na, manifest);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        code = f.exit_code;
        manifest.result({{"status", "error"}, {"exit_code", code}, {"message", f.message}});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = kExitInternal;
        manifest.result({{"status", "error"}, {"exit_code", code}, {"message", e.what()}});
    }
    try {
        manifest.write(manifest_file);
    } catch (const std::exception& e) {
        std::cerr << "warning: manifest not written: " << e.what() << '\n';
    } catch (const Failure& f) {
        std::cerr << "warning: manifest not written: " << f.message << '\n';
    }
    return code;
}
