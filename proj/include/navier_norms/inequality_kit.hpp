#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace navier_norms::inequality {

/// Non-negative piecewise-constant function on n equal cells of [0, T].
class GridFunction {
public:
    GridFunction(double T, std::vector<double> values);

    double T() const noexcept { return T_; }
    std::size_t size() const noexcept { return values_.size(); }
    double cell_width() const noexcept { return T_ / static_cast<double>(values_.size()); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    double T_;
    std::vector<double> values_;
};

/// Samples at the n + 1 nodes t_i = i T / n, the discretisation used by the
/// Volterra oracle and the Bihari bound.
struct NodalSamples {
    double T = 0.0;
    std::vector<double> values;

    std::size_t intervals() const noexcept { return values.empty() ? 0 : values.size() - 1; }
    double node(std::size_t i) const noexcept { return T * static_cast<double>(i) / static_cast<double>(intervals()); }
    /// Trapezoid-rule L^p norm of the piecewise-linear interpolant's samples.
    double lp_norm(double p) const;
};

inline constexpr double kInfinityExponent = std::numeric_limits<double>::infinity();

/// Measure of {x : |f(x)| > s}.
double distribution_function(const GridFunction& f, double s);
GridFunction decreasing_rearrangement(const GridFunction& f);
GridFunction increasing_rearrangement(const GridFunction& f);

struct Pairing {
    double lhs = 0.0;  // integral of f g
    double rhs = 0.0;  // integral of the matched increasing rearrangements
};

/// Throws kGridMismatch if the grids differ.
Pairing hardy_littlewood_pairing(const GridFunction& f, const GridFunction& g);

/// p > 0 or kInfinityExponent.
double lp_norm(const GridFunction& f, double p);

struct NormCheck {
    double p = 0.0;
    double original = 0.0;
    double rearranged = 0.0;
};

struct RearrangementReport {
    GridFunction original;
    GridFunction rearranged;  // increasing rearrangement
    std::vector<NormCheck> p_norms_checked;
};

RearrangementReport rearrangement_report(const GridFunction& f, std::span<const double> exponents);

// ---------------------------------------------------------------------------
// Bihari-LaSalle with a weakly singular kernel

/// phi(t) < a(t) + int_0^t (t-s)^{-1+gamma} psi(s) phi^beta(s) ds on [0, T].
struct BihariInstance {
    GridFunction a;    // non-decreasing
    GridFunction psi;
    double beta = 0.0;   // [0, 1)
    double gamma = 1.0;  // (0, 1]

    BihariInstance(GridFunction a_, GridFunction psi_, double beta_, double gamma_);
    double T() const noexcept { return a.T(); }
    std::size_t cells() const noexcept { return a.size(); }
    /// a at node t_i, taking the cell that ends at t_i (the first cell at t_0).
    double a_at_node(std::size_t i) const;
};

/// K_t(s~) = (a^{1-beta}(t) + int_0^{s~} (t-s)^{-1+gamma} psi(s) ds)^{1/(1-beta)}
/// with the kernel integrated exactly against piecewise-constant psi.
double bihari_bound(const BihariInstance& inst, double t, double s_tilde);

/// t -> K_t(t) at every node.
NodalSamples bound_at_nodes(const BihariInstance& inst);

/// Right-hand side of the hypothesis at every node, for nodal phi interpolated
/// linearly and the kernel integrated exactly cell by cell (product trapezoid).
NodalSamples hypothesis_rhs(const BihariInstance& inst, const NodalSamples& phi);

enum class HypothesisMode {
    kStrict,         // phi < rhs at every node
    kAllowEquality,  // phi <= rhs up to rounding, for the equality case
};

struct BihariReport {
    bool verified = false;
    double max_violation = 0.0;  // max_i (phi*_i - K*_i) / K*_i
    std::size_t worst_node = 0;
    double hypothesis_margin = 0.0;  // min_i (rhs_i - phi_i)
};

/// Checks the hypothesis (throws kHypothesisFailed naming the first bad node),
/// then compares the increasing rearrangements of phi and t -> K_t(t).
BihariReport bihari_verify(const BihariInstance& inst, const NodalSamples& phi,
                           HypothesisMode mode = HypothesisMode::kStrict, double relative_slack = 1e-6);

struct VolterraSolution {
    NodalSamples phi;
    int iterations = 0;
    double residual = 0.0;  // last successive sup-distance
};

/// Picard iteration for the equality case. Throws kNoConvergence when
/// max_iterations is reached.
VolterraSolution volterra_oracle(const BihariInstance& inst, double tolerance = 1e-10, int max_iterations = 10000);

struct CorollaryNormReport {
    double lhs = 0.0;          // ||phi||_{L^r} of the oracle solution
    double a_norm = 0.0;       // ||a||_{L^r}
    double psi_term = 0.0;     // ||psi||_{L^{r~}}^{1-beta}
    double r_tilde = 0.0;
    double ratio = 0.0;        // lhs / (a_norm + psi_term)
};

/// 1/r~ = (1 - beta - gamma r) / r; throws kExponentInadmissible unless r~ >= 1.
CorollaryNormReport corollary_norm_bound(const BihariInstance& inst, double r);
double corollary_exponent(double beta, double gamma, double r);

// ---------------------------------------------------------------------------

/// g(t) = int_0^T |t - s|^{-alpha} f(s) ds at cell midpoints, kernel integrated exactly.
GridFunction riesz_convolution(const GridFunction& f, double alpha);

struct SingularBetaIntegral {
    double value = 0.0;
    double bound = 0.0;
    double constant = 0.0;  // (1-theta)^{-1} + (1-beta)^{-1}
};

/// int_s^T (T-t)^{-theta} (t-s)^{-beta} dt and its bound C ((T-s)/2)^{1-theta-beta}.
/// Throws kNonIntegrable for theta >= 1 or beta >= 1.
SingularBetaIntegral singular_beta_integral(double s, double T, double theta, double beta);

// ---------------------------------------------------------------------------
// Random instances (reproducible from the caller's generator)

/// Values uniform on [0, 1).
GridFunction random_grid_function(std::mt19937_64& rng, std::size_t n, double T);

/// a = a0 + cumulative sum of uniform draws scaled by 1/n (non-decreasing, a0 in [1/2, 3/2));
/// psi uniform on [0, 1).
BihariInstance random_bihari_instance(std::mt19937_64& rng, std::size_t n, double T, double beta, double gamma);

}  // namespace navier_norms::inequality
