#include <algorithm>
#include <cmath>
#include <string>

#include "navier_norms/errors.hpp"
#include "navier_norms/inequality_kit.hpp"

namespace navier_norms::inequality {

namespace {

// m^g - (m-1)^g for m >= 1 without cancellation.
double power_step(double m, double g) {
    if (m <= 1.0) return std::pow(m, g);
    return -std::pow(m, g) * std::expm1(g * std::log1p(-1.0 / m));
}

// Kernel u^{gamma-1} integrated against the two hat functions of one cell that
// lies m cells behind the evaluation node (u in [(m-1)h, mh]).
struct HatWeights {
    std::vector<double> left;   // weight of the cell's left node
    std::vector<double> right;  // weight of the cell's right node
    std::vector<double> total;  // plain integral of the kernel over the cell
};

HatWeights hat_weights(std::size_t n, double h, double gamma) {
    HatWeights w;
    w.left.resize(n + 1);
    w.right.resize(n + 1);
    w.total.resize(n + 1);
    const double scale = std::pow(h, gamma);
    for (std::size_t m = 1; m <= n; ++m) {
        const double md = static_cast<double>(m);
        const double i0 = power_step(md, gamma) / gamma;          // int u^{g-1} du, units of h^g
        const double i1 = power_step(md, gamma + 1.0) / (gamma + 1.0);  // int u^g du, units of h^{g+1}
        // (1/h) int u^{g-1} (u - A) du and (1/h) int u^{g-1} (B - u) du, with A = (m-1)h, B = mh.
        w.left[m] = scale * (i1 - (md - 1.0) * i0);
        w.right[m] = scale * (md * i0 - i1);
        w.total[m] = scale * i0;
    }
    return w;
}

void check_nodes(const BihariInstance& inst, const NodalSamples& phi) {
    if (phi.values.size() != inst.cells() + 1 || phi.T != inst.T()) {
        fail(ErrorCode::kGridMismatch, "phi must have n + 1 = " + std::to_string(inst.cells() + 1) +
                                           " nodes on [0, T]; got " + std::to_string(phi.values.size()));
    }
}

}  // namespace

BihariInstance::BihariInstance(GridFunction a_, GridFunction psi_, double beta_, double gamma_)
    : a(std::move(a_)), psi(std::move(psi_)), beta(beta_), gamma(gamma_) {
    if (!(beta >= 0.0 && beta < 1.0)) fail(ErrorCode::kOutOfRange, "BihariInstance: beta must lie in [0, 1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) fail(ErrorCode::kOutOfRange, "BihariInstance: gamma must lie in (0, 1]");
    if (a.size() != psi.size() || a.T() != psi.T()) fail(ErrorCode::kGridMismatch, "BihariInstance: a and psi grids differ");
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (a[i] < a[i - 1]) {
            fail(ErrorCode::kInvalidArgument, "BihariInstance: a decreases at cell " + std::to_string(i));
        }
    }
}

double BihariInstance::a_at_node(std::size_t i) const { return a[i == 0 ? 0 : i - 1]; }

double bihari_bound(const BihariInstance& inst, double t, double s_tilde) {
    if (!(inst.gamma > 0.0)) fail(ErrorCode::kSingularityAtEndpoint, "bihari_bound: gamma must be positive");
    if (!(t >= 0.0 && t <= inst.T() * (1.0 + 1e-15))) fail(ErrorCode::kOutOfRange, "bihari_bound: t outside [0, T]");
    if (!(s_tilde >= 0.0 && s_tilde <= t)) fail(ErrorCode::kOutOfRange, "bihari_bound: s~ outside [0, t]");
    const double h = inst.psi.cell_width();
    const double g = inst.gamma;
    double integral = 0.0;
    for (std::size_t c = 0; c < inst.psi.size(); ++c) {
        const double lo = static_cast<double>(c) * h;
        if (lo >= s_tilde) break;
        const double hi = std::min(static_cast<double>(c + 1) * h, s_tilde);
        integral += inst.psi[c] * (std::pow(t - lo, g) - std::pow(t - hi, g)) / g;
    }
    // a evaluated on the cell that ends at t (first cell at t = 0).
    const auto cell = static_cast<std::size_t>(std::max(0.0, std::ceil(t / h - 1e-12) - 1.0));
    const double a_t = inst.a[std::min(cell, inst.a.size() - 1)];
    const double e = 1.0 - inst.beta;
    return std::pow(std::pow(a_t, e) + integral, 1.0 / e);
}

NodalSamples bound_at_nodes(const BihariInstance& inst) {
    const std::size_t n = inst.cells();
    const double h = inst.T() / static_cast<double>(n);
    const HatWeights w = hat_weights(n, h, inst.gamma);
    const double e = 1.0 - inst.beta;
    NodalSamples out{inst.T(), std::vector<double>(n + 1)};
    for (std::size_t i = 0; i <= n; ++i) {
        double integral = 0.0;
        for (std::size_t c = 0; c < i; ++c) integral += inst.psi[c] * w.total[i - c];
        out.values[i] = std::pow(std::pow(inst.a_at_node(i), e) + integral, 1.0 / e);
    }
    return out;
}

namespace {

void apply_operator(const BihariInstance& inst, const HatWeights& w, const std::vector<double>& g,
                    std::vector<double>& out) {
    const std::size_t n = inst.cells();
    for (std::size_t i = 0; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < i; ++c) {
            const std::size_t m = i - c;
            acc += inst.psi[c] * (w.left[m] * g[c] + w.right[m] * g[c + 1]);
        }
        out[i] = inst.a_at_node(i) + acc;
    }
}

}  // namespace

NodalSamples hypothesis_rhs(const BihariInstance& inst, const NodalSamples& phi) {
    check_nodes(inst, phi);
    const std::size_t n = inst.cells();
    const HatWeights w = hat_weights(n, inst.T() / static_cast<double>(n), inst.gamma);
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = std::pow(phi.values[i], inst.beta);
    NodalSamples out{inst.T(), std::vector<double>(n + 1)};
    apply_operator(inst, w, g, out.values);
    return out;
}

BihariReport bihari_verify(const BihariInstance& inst, const NodalSamples& phi, HypothesisMode mode,
                           double relative_slack) {
    check_nodes(inst, phi);
    const NodalSamples rhs = hypothesis_rhs(inst, phi);
    BihariReport report;
    report.hypothesis_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        const double lhs = phi.values[i];
        const double margin = rhs.values[i] - lhs;
        report.hypothesis_margin = std::min(report.hypothesis_margin, margin);
        const bool ok = mode == HypothesisMode::kStrict ? lhs < rhs.values[i]
                                                        : lhs <= rhs.values[i] * (1.0 + 1e-9) + 1e-12;
        if (!ok || lhs < 0.0 || !std::isfinite(lhs)) {
            fail(ErrorCode::kHypothesisFailed, "bihari_verify: hypothesis fails at node " + std::to_string(i) +
                                                   " (t = " + std::to_string(phi.node(i)) +
                                                   ", phi = " + std::to_string(lhs) +
                                                   ", rhs = " + std::to_string(rhs.values[i]) + ")");
        }
    }
    std::vector<double> phi_sorted = phi.values;
    std::vector<double> k_sorted = bound_at_nodes(inst).values;
    std::sort(phi_sorted.begin(), phi_sorted.end());
    std::sort(k_sorted.begin(), k_sorted.end());
    report.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < phi_sorted.size(); ++i) {
        const double v = (phi_sorted[i] - k_sorted[i]) / k_sorted[i];
        if (v > report.max_violation) {
            report.max_violation = v;
            report.worst_node = i;
        }
    }
    report.verified = report.max_violation <= relative_slack;
    return report;
}

VolterraSolution volterra_oracle(const BihariInstance& inst, double tolerance, int max_iterations) {
    const std::size_t n = inst.cells();
    const HatWeights w = hat_weights(n, inst.T() / static_cast<double>(n), inst.gamma);
    std::vector<double> phi(n + 1), next(n + 1), g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) phi[i] = inst.a_at_node(i);
    VolterraSolution sol;
    for (int it = 1; it <= max_iterations; ++it) {
        for (std::size_t i = 0; i <= n; ++i) g[i] = std::pow(phi[i], inst.beta);
        apply_operator(inst, w, g, next);
        double dist = 0.0;
        for (std::size_t i = 0; i <= n; ++i) dist = std::max(dist, std::abs(next[i] - phi[i]));
        phi.swap(next);
        sol.iterations = it;
        sol.residual = dist;
        if (!std::isfinite(dist)) break;
        if (dist < tolerance) {
            sol.phi = NodalSamples{inst.T(), std::move(phi)};
            return sol;
        }
    }
    fail(ErrorCode::kNoConvergence, "volterra_oracle: no convergence after " + std::to_string(sol.iterations) +
                                        " iterations (residual " + std::to_string(sol.residual) + ")");
}

double corollary_exponent(double beta, double gamma, double r) {
    const double inv = (1.0 - beta - gamma * r) / r;
    if (!(inv > 0.0) || inv > 1.0) {
        fail(ErrorCode::kExponentInadmissible,
             "corollary_norm_bound: 1/r~ = " + std::to_string(inv) + " gives no admissible r~ >= 1");
    }
    return 1.0 / inv;
}

CorollaryNormReport corollary_norm_bound(const BihariInstance& inst, double r) {
    if (!(r >= 1.0 - inst.beta)) fail(ErrorCode::kOutOfRange, "corollary_norm_bound: requires r >= 1 - beta");
    CorollaryNormReport out;
    out.r_tilde = corollary_exponent(inst.beta, inst.gamma, r);
    const VolterraSolution sol = volterra_oracle(inst);
    // cell c carries the value at its right node, matching a_at_node
    out.lhs = lp_norm(GridFunction(inst.T(), {sol.phi.values.begin() + 1, sol.phi.values.end()}), r);
    out.a_norm = lp_norm(inst.a, r);
    out.psi_term = std::pow(lp_norm(inst.psi, out.r_tilde), 1.0 - inst.beta);
    out.ratio = out.lhs / (out.a_norm + out.psi_term);
    return out;
}

}  // namespace navier_norms::inequality
