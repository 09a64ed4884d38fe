#include "navier_norms/exponent_algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "navier_norms/errors.hpp"

namespace navier_norms::exponents {

namespace {

const ExtRational kOne{1};
const ExtRational kInf = ExtRational::infinity();

ExtRational inv(const ExtRational& x) { return x.reciprocal(); }

// alpha with 1/r = alpha/p + (1-alpha)/q, reciprocal form.
ExtRational reciprocal_weight(const ExtRational& p, const ExtRational& r, const ExtRational& q) {
    return (inv(r) - inv(q)) / (inv(p) - inv(q));
}

bool between_inclusive(const ExtRational& x, const ExtRational& a, const ExtRational& b) {
    return a <= b ? (a <= x && x <= b) : (b <= x && x <= a);
}

}  // namespace

InterpolationSplit interp_alpha(const ExtRational& p, const ExtRational& r, const ExtRational& q) {
    if (p == q) fail(ErrorCode::kDegenerate, "interp_alpha: p = q = " + p.to_string());
    if (p < kOne) fail(ErrorCode::kOutOfRange, "interp_alpha: p = " + p.to_string() + " < 1");
    if (!(p <= r && r <= q)) {
        fail(ErrorCode::kOutOfRange,
             "interp_alpha: r = " + r.to_string() + " not in [" + p.to_string() + ", " + q.to_string() + "]");
    }
    ExtRational alpha = reciprocal_weight(p, r, q);
    return {alpha, kOne - alpha};
}

ExtRational double_interp(const ExtRational& p, const ExtRational& p_t, const ExtRational& q, const ExtRational& q_t,
                          const ExtRational& r) {
    if (p == q) fail(ErrorCode::kDegenerate, "double_interp: p = q = " + p.to_string());
    const bool inside = p < q ? (p < r && r < q) : (q < r && r < p);
    if (!inside) {
        fail(ErrorCode::kOutOfRange,
             "double_interp: r = " + r.to_string() + " not strictly between " + p.to_string() + " and " + q.to_string());
    }
    if (p_t.sign() <= 0 || q_t.sign() <= 0) fail(ErrorCode::kOutOfRange, "double_interp: time exponents must be > 0");
    const ExtRational alpha = reciprocal_weight(p, r, q);
    return (alpha * inv(p_t) + (kOne - alpha) * inv(q_t)).reciprocal();
}

SobolevSplit brezis_mironescu(const ExtRational& p, const ExtRational& q, const ExtRational& r) {
    if (p == q) fail(ErrorCode::kDegenerate, "brezis_mironescu: p = q = " + p.to_string());
    if (p < kOne || q < kOne) fail(ErrorCode::kOutOfRange, "brezis_mironescu: p, q must be >= 1");
    if (!between_inclusive(inv(r), inv(p), inv(q))) {
        fail(ErrorCode::kOutOfRange, "brezis_mironescu: 1/r not between 1/p and 1/q (r = " + r.to_string() + ")");
    }
    ExtRational alpha = reciprocal_weight(p, r, q);
    return {alpha, kOne - alpha};
}

HlsTarget hls_target(const ExtRational& alpha, const ExtRational& r_prime) {
    if (!(ExtRational(0) < alpha && alpha < kOne)) {
        fail(ErrorCode::kAlphaOutOfRange, "hls_target: alpha = " + alpha.to_string() + " not in (0,1)");
    }
    if (r_prime < kOne) fail(ErrorCode::kOutOfRange, "hls_target: r' = " + r_prime.to_string() + " < 1");
    const ExtRational inv_target = inv(r_prime) + alpha - kOne;
    HlsTarget out;
    if (inv_target.is_zero()) {
        out.r_tilde = kInf;
        out.reason = "endpoint r_tilde = inf is excluded";
    } else if (inv_target.sign() < 0) {
        out.r_tilde = inv_target.reciprocal();
        out.reason = "negative target exponent";
    } else {
        out.r_tilde = inv_target.reciprocal();
        out.admissible = out.r_tilde >= kOne;
        if (!out.admissible) out.reason = "target exponent below 1";
    }
    return out;
}

double heat_kernel_lq_norm(double nu, double t, const ExtRational& q) {
    if (!(nu > 0.0) || !(t > 0.0)) fail(ErrorCode::kOutOfRange, "heat_kernel_lq_norm: nu and t must be positive");
    if (!q.is_finite() || q < kOne) fail(ErrorCode::kOutOfRange, "heat_kernel_lq_norm: q must be finite and >= 1");
    const ExtRational prefactor_exp = ExtRational(-3, 2) / q;
    const ExtRational time_exp = ExtRational(3) * (kOne - q) / (ExtRational(2) * q);
    const double qd = q.to_double();
    return std::pow(qd, prefactor_exp.to_double()) *
           std::pow(4.0 * std::numbers::pi * nu * t, time_exp.to_double());
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ExtRational> trimmed(std::vector<ExtRational> c) {
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    return c;
}

ExtRational horner(const std::vector<ExtRational>& c, const ExtRational& x) {
    ExtRational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string poly_string(const std::vector<ExtRational>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!first) os << (c[i].sign() < 0 ? " - " : " + ");
        else if (c[i].sign() < 0) os << "-";
        const ExtRational mag = c[i].sign() < 0 ? -c[i] : c[i];
        if (!(mag == kOne) || i == 0) os << mag;
        if (i >= 1) os << (mag == kOne ? "" : "*") << "r";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

RationalFunction::RationalFunction(std::vector<ExtRational> numerator, std::vector<ExtRational> denominator)
    : num_(trimmed(std::move(numerator))), den_(trimmed(std::move(denominator))) {
    if (num_.empty() || den_.empty() || (den_.size() == 1 && den_[0].is_zero())) {
        fail(ErrorCode::kInvalidArgument, "RationalFunction: empty or zero denominator polynomial");
    }
}

std::optional<ExtRational> RationalFunction::evaluate(const ExtRational& r) const {
    if (r.is_infinite()) {
        const std::size_t dn = num_.size() - 1;
        const std::size_t dd = den_.size() - 1;
        if (dn < dd) return ExtRational(0);
        if (dn > dd) return kInf;
        return num_.back() / den_.back();
    }
    const ExtRational n = horner(num_, r);
    const ExtRational d = horner(den_, r);
    if (d.is_zero()) {
        if (n.is_zero()) return std::nullopt;
        return kInf;
    }
    return n / d;
}

std::string RationalFunction::to_string() const {
    return "(" + poly_string(num_) + ")/(" + poly_string(den_) + ")";
}

bool RInterval::contains(const ExtRational& r) const {
    const bool above = lo_closed ? lo <= r : lo < r;
    const bool below = hi_closed ? r <= hi : r < hi;
    return above && below;
}

std::string RInterval::to_string() const {
    return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() + (hi_closed ? "]" : ")");
}

CorollaryTarget parse_corollary_target(const std::string& name) {
    if (name == "grad2") return CorollaryTarget::kGrad2;
    if (name == "grad1") return CorollaryTarget::kGrad1;
    if (name == "velocity") return CorollaryTarget::kVelocity;
    fail(ErrorCode::kInvalidArgument, "unknown corollary target '" + name + "' (grad2 | grad1 | velocity)");
}

const char* to_string(CorollaryTarget target) noexcept {
    switch (target) {
        case CorollaryTarget::kGrad2: return "grad2";
        case CorollaryTarget::kGrad1: return "grad1";
        case CorollaryTarget::kVelocity: return "velocity";
    }
    return "?";
}

namespace {

using Coeffs = std::vector<ExtRational>;

CurveBranch branch(std::string id, int k, RInterval interval, Coeffs num, Coeffs den, std::string relation,
                   bool open_bound = false) {
    return CurveBranch{std::move(id), k, std::move(interval), RationalFunction(std::move(num), std::move(den)),
                       std::move(relation), open_bound};
}

RInterval closed(ExtRational lo, ExtRational hi) { return {std::move(lo), std::move(hi), true, true}; }
RInterval open(ExtRational lo, ExtRational hi) { return {std::move(lo), std::move(hi), false, false}; }
RInterval closed_open(ExtRational lo, ExtRational hi) { return {std::move(lo), std::move(hi), true, false}; }
RInterval open_closed(ExtRational lo, ExtRational hi) { return {std::move(lo), std::move(hi), false, true}; }

const ExtRational h32{3, 2};
const ExtRational h43{4, 3};

std::vector<CurveSet> build_theorem_sets() {
    std::vector<CurveSet> sets(3);
    sets[0] = {"theorem1.k0", 0,
               {branch("k0.1", 0, closed(2, 6), {0, 4}, {-6, 3}, "4/rt + 6/r = 3"),
                branch("k0.2", 0, closed(6, kInf), {0, 1}, {-3, 1}, "1/rt + 3/r = 1")}};
    sets[1] = {"theorem1.k1", 1,
               {branch("k1.1", 1, closed(2, 3), {0, 1}, {-3, 2}, "1/rt + 3/r = 2"),
                branch("k1.2", 1, closed(3, 6), {0, -4, 1}, {6, -13, 4}, "rt = r(r-4)/(4r^2-13r+6)")}};
    sets[2] = {"theorem1.k2", 2,
               {branch("k2.1", 2, open(1, h32), {0, 2}, {-3, 4}, "2/rt + 3/r = 4"),
                branch("k2.2", 2, closed_open(h32, 2), {0, -8, 6}, {12, -26, 13}, "rt = 2r(3r-4)/(13r^2-26r+12)"),
                branch("k2.3", 2, closed_open(2, kInf), {0, 1}, {-6, 9}, "1/rt + 6/r = 9")}};
    return sets;
}

std::vector<CurveSet> build_corollary_sets() {
    std::vector<CurveSet> sets(3);
    sets[0] = {"corollary.grad2", 2,
               {branch("grad2.1", 2, open_closed(1, h43), {0, 2}, {-2, 3}, "2/rt + 2/r > 3", true),
                branch("grad2.2", 2, open(h43, h32), {0, 1}, {-3, 3}, "1/rt + 3/r > 3", true),
                branch("grad2.3", 2, closed(h32, 2), {0, 1}, {-3, 3}, "1/rt + 3/r = 3"),
                branch("grad2.4", 2, closed_open(2, kInf), {0, 1}, {-15, 9}, "1/rt + 15/r = 9")}};
    sets[1] = {"corollary.grad1", 1,
               {branch("grad1.1", 1, open_closed(2, 6), {0, 1}, {-3, 2}, "1/rt + 3/r = 2"),
                branch("grad1.2", 1, open(6, kInf), {0, 1}, {-15, 4}, "1/rt + 15/r = 4")}};
    sets[2] = build_theorem_sets()[0];
    sets[2].name = "corollary.velocity";
    return sets;
}

std::string describe(const std::optional<ExtRational>& v) { return v ? v->to_string() : "undefined"; }

CurvePoint make_point(const CurveSet& set, const CurveBranch& b, const ExtRational& r) {
    CurvePoint pt;
    pt.k = set.k;
    pt.r = r;
    pt.branch_id = b.id;
    pt.open_bound = b.open_bound;
    pt.r_tilde = b.rule.evaluate(r);
    if (!pt.r_tilde) {
        pt.reason = "rule undefined (0/0) at r";
    } else if (pt.r_tilde->is_infinite() || pt.r_tilde->sign() > 0) {
        pt.admissible = true;
    } else {
        pt.reason = "rule gives r_tilde <= 0";
    }
    return pt;
}

}  // namespace

const CurveSet& theorem1_branches(int k) {
    static const std::vector<CurveSet> sets = build_theorem_sets();
    if (k < 0 || k > 2) fail(ErrorCode::kInvalidArgument, "derivative order k must be 0, 1 or 2");
    return sets[static_cast<std::size_t>(k)];
}

const CurveSet& corollary_branches(CorollaryTarget target) {
    static const std::vector<CurveSet> sets = build_corollary_sets();
    return sets[static_cast<std::size_t>(target)];
}

CurvePoint evaluate_curve(const CurveSet& set, const ExtRational& r) {
    std::vector<const CurveBranch*> hits;
    for (const auto& b : set.branches) {
        if (b.interval.contains(r)) hits.push_back(&b);
    }
    if (hits.empty()) {
        CurvePoint pt;
        pt.k = set.k;
        pt.r = r;
        pt.reason = "r outside every branch of " + set.name;
        return pt;
    }
    CurvePoint pt = make_point(set, *hits.front(), r);
    for (std::size_t i = 1; i < hits.size(); ++i) {
        const auto other = hits[i]->rule.evaluate(r);
        const bool agree = other.has_value() == pt.r_tilde.has_value() && (!other || *other == *pt.r_tilde);
        std::string note = agree ? "branches " + pt.branch_id + " and " + hits[i]->id + " agree"
                                 : "discontinuous breakpoint: " + hits[i]->id + " gives " + describe(other);
        pt.reason = pt.reason.empty() ? note : pt.reason + "; " + note;
    }
    return pt;
}

CurvePoint theorem1_curve(int k, const ExtRational& r) {
    CurvePoint pt = evaluate_curve(theorem1_branches(k), r);
    if (pt.branch_id.empty()) fail(ErrorCode::kNoBranch, "theorem1_curve: " + pt.reason + " (r = " + r.to_string() + ")");
    return pt;
}

CurvePoint corollary_curve(CorollaryTarget target, const ExtRational& r) {
    CurvePoint pt = evaluate_curve(corollary_branches(target), r);
    if (pt.branch_id.empty()) fail(ErrorCode::kNoBranch, "corollary_curve: " + pt.reason + " (r = " + r.to_string() + ")");
    return pt;
}

PairVerdict classify_pair(int k, const ExtRational& r, const ExtRational& r_tilde) {
    if (k < 0 || k > 2) fail(ErrorCode::kOutOfRange, "classify_pair: k must be 0, 1 or 2");
    const CurvePoint main = evaluate_curve(theorem1_branches(k), r);
    const CorollaryTarget target =
        k == 2 ? CorollaryTarget::kGrad2 : (k == 1 ? CorollaryTarget::kGrad1 : CorollaryTarget::kVelocity);
    const CurvePoint better = evaluate_curve(corollary_branches(target), r);

    PairVerdict v;
    if (main.admissible) v.curve_value = main.r_tilde;
    if (main.admissible && *main.r_tilde == r_tilde) {
        v.kind = VerdictKind::kOnTheorem1;
        v.branch_id = main.branch_id;
        v.text = "on Theorem-1 curve (branch " + main.branch_id + ")";
        return v;
    }
    if (better.admissible && *better.r_tilde == r_tilde) {
        v.kind = VerdictKind::kOnCorollary;
        v.branch_id = better.branch_id;
        v.text = std::string("on ") + to_string(target) + " curve (branch " + better.branch_id +
                 (better.open_bound ? ", supremum not attained)" : ")");
        return v;
    }
    if (!main.admissible && !better.admissible) {
        v.kind = VerdictKind::kInadmissible;
        v.text = "inadmissible: " + (main.reason.empty() ? std::string("no admissible exponent at this r") : main.reason);
        return v;
    }
    v.kind = VerdictKind::kOffCurve;
    v.branch_id = main.admissible ? main.branch_id : better.branch_id;
    v.text = "off-curve: Theorem-1 gives r~ = " + (main.admissible ? main.r_tilde->to_string() : std::string("none"));
    if (better.admissible) v.text += ", " + std::string(to_string(target)) + " gives r~ = " + better.r_tilde->to_string();
    return v;
}

std::vector<Breakpoint> breakpoints(const CurveSet& set) {
    std::vector<Breakpoint> out;
    for (std::size_t i = 0; i + 1 < set.branches.size(); ++i) {
        const auto& left = set.branches[i];
        const auto& right = set.branches[i + 1];
        if (!(left.interval.hi == right.interval.lo)) continue;
        Breakpoint bp;
        bp.r = left.interval.hi;
        bp.left_branch = left.id;
        bp.right_branch = right.id;
        bp.left_value = left.rule.evaluate(bp.r);
        bp.right_value = right.rule.evaluate(bp.r);
        bp.both_closed = left.interval.hi_closed && right.interval.lo_closed;
        bp.agree = bp.left_value.has_value() && bp.right_value.has_value() && *bp.left_value == *bp.right_value;
        out.push_back(std::move(bp));
    }
    return out;
}

void require_continuity(const CurveSet& set) {
    for (const auto& bp : breakpoints(set)) {
        if (bp.both_closed && !bp.agree) {
            fail(ErrorCode::kBranchDisagreement, set.name + ": branches " + bp.left_branch + " and " + bp.right_branch +
                                                     " disagree at r = " + bp.r.to_string() + " (" +
                                                     describe(bp.left_value) + " vs " + describe(bp.right_value) + ")");
        }
    }
}

std::vector<CurvePoint> sample_curve(const CurveSet& set, const ExtRational& r_min, const ExtRational& r_max, int n) {
    if (n < 2) fail(ErrorCode::kOutOfRange, "sample_curve: need at least 2 samples");
    if (!r_min.is_finite() || !r_max.is_finite() || !(r_min < r_max)) {
        fail(ErrorCode::kOutOfRange, "sample_curve: need finite r_min < r_max");
    }
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    const ExtRational step = (r_max - r_min) / ExtRational(n - 1);
    for (int i = 0; i < n; ++i) {
        const ExtRational r = i == n - 1 ? r_max : r_min + step * ExtRational(i);
        out.push_back(evaluate_curve(set, r));
    }
    return out;
}

// ---------------------------------------------------------------------------

FFamily parse_f_family(const std::string& name) {
    if (name == "F1") return FFamily::kF1;
    if (name == "F2") return FFamily::kF2;
    if (name == "F3") return FFamily::kF3;
    if (name == "F3tilde") return FFamily::kF3Tilde;
    fail(ErrorCode::kInvalidArgument, "unknown family '" + name + "' (F1 | F2 | F3 | F3tilde)");
}

const char* to_string(FFamily which) noexcept {
    switch (which) {
        case FFamily::kF1: return "F1";
        case FFamily::kF2: return "F2";
        case FFamily::kF3: return "F3";
        case FFamily::kF3Tilde: return "F3tilde";
    }
    return "?";
}

ExtRational f_family(FFamily which, const ExtRational& r_in, const ExtRational& p_in) {
    if (!r_in.is_finite() || !p_in.is_finite()) fail(ErrorCode::kInvalidArgument, "f_family: r and p must be finite");
    const mpq_class& r = r_in.value();
    const mpq_class& p = p_in.value();
    mpq_class num, den;
    switch (which) {
        case FFamily::kF1:
            num = 2 * r * (5 * p - 6);
            den = 8 * r * p - 9 * r - 18 * p + 18;
            break;
        case FFamily::kF2:
            num = (3 * p - 6) * r * r + (-10 * p + 30) * r + 3 * p - 18;
            den = r * (r * p + 3 * r - 3 * p);
            break;
        case FFamily::kF3:
            num = r * (r - 4) * (p * r + 3 * r - 3 * p);
            den = 3 * (r - 2) * (3 * p * r * r - 6 * r * r - 11 * p * r + 27 * r + 6 * p - 18);
            break;
        case FFamily::kF3Tilde:
            num = 2 * r * (3 * r - 2 * p);
            den = 21 * r * r - 18 * r - 9 * r * p + 6 * p;
            break;
    }
    if (sgn(den) == 0) {
        fail(ErrorCode::kPole, std::string("f_family: ") + to_string(which) + " has a pole at (r, p) = (" +
                                   r_in.to_string() + ", " + p_in.to_string() + ")");
    }
    return ExtRational(mpq_class(num / den));
}

int f_family_dp_sign(FFamily which, const ExtRational& r_in) {
    if (!r_in.is_finite()) fail(ErrorCode::kInvalidArgument, "f_family_dp_sign: r must be finite");
    if (r_in <= kOne) fail(ErrorCode::kOutOfRange, "f_family_dp_sign: requires r > 1");
    const mpq_class& r = r_in.value();
    // Numerators of d/dp (the squared denominators are positive off poles).
    mpq_class numerator;
    switch (which) {
        case FFamily::kF1: numerator = 3 * (r - 6) * r; break;
        case FFamily::kF2: numerator = 3 * (r - 3) * (5 * r - 6) * (r - 1) / r; break;
        case FFamily::kF3:
            if (r == 2) fail(ErrorCode::kPole, "f_family_dp_sign: F3 is singular at r = 2");
            numerator = -(r - 4) * (r - 3) * (r - 1) * r * (5 * r - 6) / (r - 2);
            break;
        case FFamily::kF3Tilde: numerator = -2 * r * r * (5 * r - 6); break;
    }
    return sgn(numerator);
}

ThetaBound weighted_theta_bound(int k, const ExtRational& r) {
    if (k < 0 || k > 2) fail(ErrorCode::kInvalidArgument, "weighted_theta_bound: k must be 0, 1 or 2");
    if (r < kOne) fail(ErrorCode::kOutOfRange, "weighted_theta_bound: r = " + r.to_string() + " < 1");
    if (k == 0 && r.is_infinite()) fail(ErrorCode::kOutOfRange, "weighted_theta_bound: r must be finite for k = 0");
    if (k >= 1 && r >= ExtRational(3, k)) {
        fail(ErrorCode::kOutOfRange, "weighted_theta_bound: r = " + r.to_string() + " >= 3/k");
    }
    ThetaBound out;
    out.theta_max = (ExtRational(3) - ExtRational(k) * r) / (ExtRational(2) * r);
    out.equality_allowed = (k == 0 && r >= ExtRational(3)) || k >= 1;
    if (out.theta_max >= kOne) {
        out.effective = kOne;
        out.effective_inclusive = false;
    } else {
        out.effective = out.theta_max;
        out.effective_inclusive = out.equality_allowed;
    }
    return out;
}

}  // namespace navier_norms::exponents
