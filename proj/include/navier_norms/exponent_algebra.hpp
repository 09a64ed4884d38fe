#pragma once

#include <optional>
#include <string>
#include <vector>

#include "navier_norms/ext_rational.hpp"

namespace navier_norms::exponents {

struct InterpolationSplit {
    ExtRational alpha;
    ExtRational one_minus_alpha;
};

/// Lebesgue interpolation weight: 1/r = alpha/p + (1-alpha)/q with p <= r <= q.
/// Evaluated in reciprocal form so that q = inf is handled exactly.
InterpolationSplit interp_alpha(const ExtRational& p, const ExtRational& r, const ExtRational& q);

/// Time exponent of the mixed norm obtained by interpolating L^{p_t}_T L^p and
/// L^{q_t}_T L^q at the space exponent r (r strictly between p and q).
/// Uses 1/r_t = alpha/p_t + (1-alpha)/q_t, which is the reciprocal of
/// q_t p_t r (q-p) / (p_t q (r-p) + q_t p (q-r)).
ExtRational double_interp(const ExtRational& p, const ExtRational& p_t, const ExtRational& q,
                          const ExtRational& q_t, const ExtRational& r);

struct SobolevSplit {
    ExtRational alpha;
    ExtRational gamma;  // smoothness index 1 - alpha
};

/// Weights of the W^{gamma,r} <= L^p^alpha * W^{1,q}^{1-alpha} interpolation.
SobolevSplit brezis_mironescu(const ExtRational& p, const ExtRational& q, const ExtRational& r);

struct HlsTarget {
    ExtRational r_tilde;
    bool admissible = false;
    std::string reason;
};

/// Target exponent of convolution with |.|^{-alpha}: 1/r' + alpha = 1 + 1/r_tilde.
HlsTarget hls_target(const ExtRational& alpha, const ExtRational& r_prime);

/// ||h_nu(t, x - .)||_{L^q} = q^{-3/(2q)} (4 pi nu t)^{3(1-q)/(2q)} for the 3-D heat kernel.
double heat_kernel_lq_norm(double nu, double t, const ExtRational& q);

// ---------------------------------------------------------------------------
// Piecewise admissibility curves

/// r_tilde = numerator(r) / denominator(r), coefficients in increasing degree.
class RationalFunction {
public:
    RationalFunction(std::vector<ExtRational> numerator, std::vector<ExtRational> denominator);

    /// A vanishing denominator with non-vanishing numerator yields +inf (the
    /// reciprocal relation 1/r_tilde = 0); 0/0 yields nullopt. r = inf is
    /// evaluated through the leading coefficients.
    std::optional<ExtRational> evaluate(const ExtRational& r) const;
    std::string to_string() const;

private:
    std::vector<ExtRational> num_;
    std::vector<ExtRational> den_;
};

struct RInterval {
    ExtRational lo;
    ExtRational hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(const ExtRational& r) const;
    std::string to_string() const;
};

struct CurveBranch {
    std::string id;
    int k = 0;
    RInterval interval;
    RationalFunction rule;
    std::string relation;  // the defining relation, e.g. "4/rt + 6/r = 3"
    bool open_bound = false;  // strict inequality: rule gives the supremum, not attained
};

struct CurveSet {
    std::string name;
    int k = 0;
    std::vector<CurveBranch> branches;
};

struct CurvePoint {
    int k = 0;
    ExtRational r;
    std::optional<ExtRational> r_tilde;  // empty when undefined
    bool admissible = false;
    bool open_bound = false;
    std::string branch_id;
    std::string reason;
};

enum class CorollaryTarget { kGrad2, kGrad1, kVelocity };

CorollaryTarget parse_corollary_target(const std::string& name);
const char* to_string(CorollaryTarget target) noexcept;

/// Branches of the main a-priori estimate for derivative order k in {0,1,2}.
const CurveSet& theorem1_branches(int k);
/// Improved curves obtained by interpolation (grad2) and Sobolev shift (grad1);
/// kVelocity has no improvement and returns the k = 0 branches.
const CurveSet& corollary_branches(CorollaryTarget target);

/// Non-throwing evaluation: outside every branch gives an inadmissible point.
/// When r sits on closed endpoints of two branches, the first listed branch
/// wins and the reason records whether the other one agrees.
CurvePoint evaluate_curve(const CurveSet& set, const ExtRational& r);

/// Throws kNoBranch when r lies outside every interval.
CurvePoint theorem1_curve(int k, const ExtRational& r);
CurvePoint corollary_curve(CorollaryTarget target, const ExtRational& r);

enum class VerdictKind { kOnTheorem1, kOnCorollary, kOffCurve, kInadmissible };

struct PairVerdict {
    VerdictKind kind = VerdictKind::kInadmissible;
    std::string branch_id;
    std::optional<ExtRational> curve_value;  // Theorem-1 value at r when admissible
    std::string text;
};

/// Places (k, r, r~) relative to the Theorem-1 branches and the improved curve
/// for the same derivative order.
PairVerdict classify_pair(int k, const ExtRational& r, const ExtRational& r_tilde);

struct Breakpoint {
    ExtRational r;
    std::string left_branch;
    std::string right_branch;
    std::optional<ExtRational> left_value;
    std::optional<ExtRational> right_value;
    bool both_closed = false;
    bool agree = false;
};

/// Every shared endpoint between consecutive branches with both one-sided values.
std::vector<Breakpoint> breakpoints(const CurveSet& set);

/// Throws kBranchDisagreement if two branches that both claim a breakpoint
/// (closed on both sides) give different values there.
void require_continuity(const CurveSet& set);

/// n >= 2 equispaced exact nodes from r_min to r_max inclusive.
std::vector<CurvePoint> sample_curve(const CurveSet& set, const ExtRational& r_min, const ExtRational& r_max,
                                     int n);

// ---------------------------------------------------------------------------
// Rational families from the exponent optimisation

enum class FFamily { kF1, kF2, kF3, kF3Tilde };

FFamily parse_f_family(const std::string& name);
const char* to_string(FFamily which) noexcept;

/// Throws kPole when the denominator vanishes at (r, p).
ExtRational f_family(FFamily which, const ExtRational& r, const ExtRational& p);

/// Sign (-1, 0, +1) of d/dp of the family at fixed r > 1, off poles.
int f_family_dp_sign(FFamily which, const ExtRational& r);

struct ThetaBound {
    ExtRational theta_max;      // (3 - k r) / (2 r)
    bool equality_allowed = false;
    ExtRational effective;      // min(theta_max, 1)
    bool effective_inclusive = false;
};

/// Largest time-weight exponent for which the weighted integral of ||grad^k u||_{L^r}
/// stays finite. Throws kOutOfRange for r >= 3/k or r < 1.
ThetaBound weighted_theta_bound(int k, const ExtRational& r);

}  // namespace navier_norms::exponents
