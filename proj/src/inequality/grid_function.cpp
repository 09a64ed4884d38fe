#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "navier_norms/errors.hpp"
#include "navier_norms/inequality_kit.hpp"

namespace navier_norms::inequality {

GridFunction::GridFunction(double T, std::vector<double> values) : T_(T), values_(std::move(values)) {
    if (!(T_ > 0.0) || !std::isfinite(T_)) fail(ErrorCode::kInvalidArgument, "GridFunction: T must be positive");
    if (values_.empty()) fail(ErrorCode::kInvalidArgument, "GridFunction: need at least one cell");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
            fail(ErrorCode::kInvalidArgument,
                 "GridFunction: value " + std::to_string(values_[i]) + " at cell " + std::to_string(i) +
                     " is negative or non-finite");
        }
    }
}

double NodalSamples::lp_norm(double p) const {
    if (values.size() < 2) fail(ErrorCode::kInvalidArgument, "NodalSamples: need at least two nodes");
    if (std::isinf(p)) return *std::max_element(values.begin(), values.end(), [](double x, double y) {
        return std::abs(x) < std::abs(y);
    });
    const double h = T / static_cast<double>(intervals());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
        sum += w * std::pow(std::abs(values[i]), p);
    }
    return std::pow(sum * h, 1.0 / p);
}

double distribution_function(const GridFunction& f, double s) {
    const auto count = std::count_if(f.values().begin(), f.values().end(), [s](double v) { return v > s; });
    return static_cast<double>(count) * f.cell_width();
}

GridFunction decreasing_rearrangement(const GridFunction& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    std::sort(v.begin(), v.end(), std::greater<>());
    return GridFunction(f.T(), std::move(v));
}

GridFunction increasing_rearrangement(const GridFunction& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    std::sort(v.begin(), v.end());
    return GridFunction(f.T(), std::move(v));
}

Pairing hardy_littlewood_pairing(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size() || f.T() != g.T()) {
        fail(ErrorCode::kGridMismatch, "hardy_littlewood_pairing: grids differ (n = " + std::to_string(f.size()) +
                                           " vs " + std::to_string(g.size()) + ")");
    }
    const double h = f.cell_width();
    const auto fs = increasing_rearrangement(f);
    const auto gs = increasing_rearrangement(g);
    Pairing out;
    out.lhs = h * std::inner_product(f.values().begin(), f.values().end(), g.values().begin(), 0.0);
    out.rhs = h * std::inner_product(fs.values().begin(), fs.values().end(), gs.values().begin(), 0.0);
    return out;
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) return *std::max_element(f.values().begin(), f.values().end());
    if (!(p > 0.0)) fail(ErrorCode::kOutOfRange, "lp_norm: exponent must be positive");
    double sum = 0.0;
    for (double v : f.values()) sum += std::pow(v, p);
    return std::pow(sum * f.cell_width(), 1.0 / p);
}

RearrangementReport rearrangement_report(const GridFunction& f, std::span<const double> exponents) {
    RearrangementReport report{f, increasing_rearrangement(f), {}};
    for (double p : exponents) report.p_norms_checked.push_back({p, lp_norm(f, p), lp_norm(report.rearranged, p)});
    return report;
}

GridFunction random_grid_function(std::mt19937_64& rng, std::size_t n, double T) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return GridFunction(T, std::move(v));
}

BihariInstance random_bihari_instance(std::mt19937_64& rng, std::size_t n, double T, double beta, double gamma) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> a(n);
    double level = 0.5 + u(rng);
    for (auto& x : a) {
        level += u(rng) / static_cast<double>(n);
        x = level;
    }
    GridFunction psi = random_grid_function(rng, n, T);
    return BihariInstance(GridFunction(T, std::move(a)), std::move(psi), beta, gamma);
}

}  // namespace navier_norms::inequality
