#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "navier_norms/errors.hpp"
#include "navier_norms/io.hpp"

namespace navier_norms::io {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

[[noreturn]] void parse_fail(const KeyValue& kv, const std::string& what) {
    fail(ErrorCode::kParse, "line " + std::to_string(kv.line) + ": " + kv.key + ": " + what);
}

double number(const KeyValue& kv) {
    try {
        return parse_double(kv.value, kv.key);
    } catch (const Error& e) {
        parse_fail(kv, "expected a number, got '" + kv.value + "'");
    }
}

long long integer(const KeyValue& kv) {
    long long v = 0;
    const char* first = kv.value.data();
    const char* last = first + kv.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) parse_fail(kv, "expected an integer, got '" + kv.value + "'");
    return v;
}

std::uint64_t unsigned_integer(const KeyValue& kv) {
    std::uint64_t v = 0;
    const char* first = kv.value.data();
    const char* last = first + kv.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) parse_fail(kv, "expected a non-negative integer, got '" + kv.value + "'");
    return v;
}

bool boolean(const KeyValue& kv) {
    if (kv.value == "true" || kv.value == "1" || kv.value == "yes") return true;
    if (kv.value == "false" || kv.value == "0" || kv.value == "no") return false;
    parse_fail(kv, "expected true or false");
}

std::pair<double, double> range(const KeyValue& kv) {
    const auto parts = split_list(kv.value);
    if (parts.empty() || parts.size() > 2) parse_fail(kv, "expected a value or a 'min max' pair");
    std::vector<double> v;
    for (const auto& p : parts) {
        try {
            v.push_back(parse_double(p, kv.key));
        } catch (const Error&) {
            parse_fail(kv, "expected a number, got '" + p + "'");
        }
    }
    return {v.front(), v.back()};
}

std::string range_text(double lo, double hi) {
    return lo == hi ? format_double(lo) : format_double(lo) + " " + format_double(hi);
}

}  // namespace

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_double17(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity") return INFINITY;
    if (t == "-inf") return -INFINITY;
    double v = 0.0;
    const char* first = t.data();
    const char* last = first + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != last)
        fail(ErrorCode::kParse, std::string(what) + ": expected a number, got '" + t + "'");
    return v;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
    std::vector<KeyValue> out;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected 'key = value'");
        KeyValue kv{trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)), lineno};
        if (kv.key.empty()) fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": missing key");
        if (!seen.insert(kv.key).second) parse_fail(kv, "duplicate key");
        out.push_back(std::move(kv));
    }
    return out;
}

spectral::SolverConfig parse_solver_config(std::string_view text) {
    spectral::SolverConfig c;
    for (const auto& kv : parse_key_values(text)) {
        const auto& k = kv.key;
        if (k == "N") c.N = static_cast<int>(integer(kv));
        else if (k == "nu") c.nu = number(kv);
        else if (k == "dt") c.dt = number(kv);
        else if (k == "T") c.T = number(kv);
        else if (k == "initial_condition") c.initial_condition = kv.value;
        else if (k == "amplitude") c.amplitude = number(kv);
        else if (k == "seed") c.seed = unsigned_integer(kv);
        else if (k == "forcing") c.forcing = kv.value;
        else if (k == "forcing_amplitude") c.forcing_amplitude = number(kv);
        else if (k == "sample_stride") c.sample_stride = number(kv);
        else if (k == "tail_fraction") c.tail_fraction = number(kv);
        else if (k == "snapshot_stride") c.snapshot_stride = number(kv);
        else if (k == "nonlinear") c.nonlinear = boolean(kv);
        else if (k == "norms") {
            c.norms.clear();
            static const std::regex pair_re(R"(\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\))");
            for (std::sregex_iterator it(kv.value.begin(), kv.value.end(), pair_re), end; it != end; ++it) {
                KeyValue order{k, (*it)[1].str(), kv.line};
                KeyValue expo{k, (*it)[2].str(), kv.line};
                c.norms.push_back({static_cast<int>(integer(order)), number(expo)});
            }
            const std::string leftover = trim(std::regex_replace(kv.value, pair_re, ""));
            if (!leftover.empty() && leftover.find_first_not_of(", ") != std::string::npos)
                parse_fail(kv, "expected a list of (k, r) pairs");
            if (c.norms.empty()) parse_fail(kv, "expected at least one (k, r) pair");
        } else if (k == "theta") {
            c.thetas.clear();
            for (const auto& p : split_list(kv.value)) c.thetas.push_back(number({k, p, kv.line}));
        } else {
            parse_fail(kv, "unknown key");
        }
    }
    c.validate();
    return c;
}

std::string to_config_text(const spectral::SolverConfig& c) {
    std::ostringstream o;
    o << "N = " << c.N << '\n'
      << "nu = " << format_double(c.nu) << '\n'
      << "dt = " << format_double(c.dt) << '\n'
      << "T = " << format_double(c.T) << '\n'
      << "initial_condition = " << c.initial_condition << '\n'
      << "amplitude = " << format_double(c.amplitude) << '\n'
      << "seed = " << c.seed << '\n'
      << "forcing = " << c.forcing << '\n'
      << "forcing_amplitude = " << format_double(c.forcing_amplitude) << '\n'
      << "sample_stride = " << format_double(c.sample_stride) << '\n'
      << "tail_fraction = " << format_double(c.tail_fraction) << '\n'
      << "snapshot_stride = " << format_double(c.snapshot_stride) << '\n'
      << "nonlinear = " << (c.nonlinear ? "true" : "false") << '\n'
      << "norms =";
    for (const auto& n : c.norms) o << " (" << n.k << ", " << format_double(n.r) << ")";
    o << "\ntheta =";
    for (double t : c.thetas) o << ' ' << format_double(t);
    o << '\n';
    return o.str();
}

inequality::BihariBatchConfig parse_bihari_config(std::string_view text) {
    inequality::BihariBatchConfig c;
    for (const auto& kv : parse_key_values(text)) {
        const auto& k = kv.key;
        if (k == "n") {
            const long long n = integer(kv);
            if (n < 1) parse_fail(kv, "must be >= 1");
            c.n = static_cast<std::size_t>(n);
        } else if (k == "T") c.T = number(kv);
        else if (k == "beta") std::tie(c.beta_min, c.beta_max) = range(kv);
        else if (k == "gamma") std::tie(c.gamma_min, c.gamma_max) = range(kv);
        else if (k == "seed") c.seed = unsigned_integer(kv);
        else if (k == "trials") {
            const long long n = integer(kv);
            if (n < 1) parse_fail(kv, "must be >= 1");
            c.trials = static_cast<std::size_t>(n);
        } else if (k == "tolerance") c.tolerance = number(kv);
        else parse_fail(kv, "unknown key");
    }
    c.validate();
    return c;
}

std::string to_config_text(const inequality::BihariBatchConfig& c) {
    std::ostringstream o;
    o << "n = " << c.n << '\n'
      << "T = " << format_double(c.T) << '\n'
      << "beta = " << range_text(c.beta_min, c.beta_max) << '\n'
      << "gamma = " << range_text(c.gamma_min, c.gamma_max) << '\n'
      << "seed = " << c.seed << '\n'
      << "trials = " << c.trials << '\n'
      << "tolerance = " << format_double(c.tolerance) << '\n';
    return o.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace navier_norms::io
