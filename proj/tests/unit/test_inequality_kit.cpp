#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "navier_norms/errors.hpp"
#include "navier_norms/inequality_kit.hpp"

using namespace navier_norms::inequality;
using navier_norms::Error;
using navier_norms::ErrorCode;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kOk;
}

GridFunction constant(std::size_t n, double T, double c) { return GridFunction(T, std::vector<double>(n, c)); }

// Composite Simpson on [a, b] with m (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double acc = f(a) + f(b);
    for (int i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

// int_s^T (T-t)^{-theta} (t-s)^{-beta} dt, split at the midpoint; each half uses
// the power substitution that removes its endpoint singularity.
double beta_integral_oracle(double s, double T, double theta, double beta) {
    const double mid = 0.5 * (s + T);
    const double eb = 1.0 - beta, et = 1.0 - theta;
    // lower half: t = s + w^{1/eb}
    const double wmax = std::pow(mid - s, eb);
    const double lower = simpson(
        [&](double w) {
            const double t = s + std::pow(w, 1.0 / eb);
            return std::pow(T - t, -theta) / eb;
        },
        0.0, wmax, 4000);
    // upper half: t = T - v^{1/et}
    const double vmax = std::pow(T - mid, et);
    const double upper = simpson(
        [&](double v) {
            const double t = T - std::pow(v, 1.0 / et);
            return std::pow(t - s, -beta) / et;
        },
        0.0, vmax, 4000);
    return lower + upper;
}

}  // namespace

TEST_CASE("grid function invariants") {
    CHECK(code_of([] { GridFunction(1.0, {}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { GridFunction(1.0, {1.0, -0.5}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { GridFunction(0.0, {1.0}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { GridFunction(1.0, {NAN}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("distribution function") {
    const GridFunction ind(2.0, {1.0, 1.0, 0.0, 0.0});
    CHECK(distribution_function(ind, 0.5) == doctest::Approx(1.0));
    const GridFunction f(3.0, {1.0, 2.0, 3.0});
    CHECK(distribution_function(f, 1.5) == doctest::Approx(2.0));
    CHECK(distribution_function(f, 3.0) == 0.0);
    CHECK(distribution_function(f, 10.0) == 0.0);
}

TEST_CASE("rearrangements") {
    const GridFunction f(3.0, {1.0, 3.0, 2.0});
    const auto dec = decreasing_rearrangement(f);
    const auto inc = increasing_rearrangement(f);
    CHECK(std::vector<double>(dec.values().begin(), dec.values().end()) == std::vector<double>{3, 2, 1});
    CHECK(std::vector<double>(inc.values().begin(), inc.values().end()) == std::vector<double>{1, 2, 3});
    const auto again = decreasing_rearrangement(dec);
    CHECK(std::equal(again.values().begin(), again.values().end(), dec.values().begin()));

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_grid_function(rng, 1 + rng() % 40, 0.5 + trial * 0.1);
        const auto gi = increasing_rearrangement(g);
        const auto gd = decreasing_rearrangement(g);
        CHECK(std::equal(gi.values().begin(), gi.values().end(), gd.values().rbegin()));
        // (g^2)* = (g*)^2 cell-wise
        std::vector<double> sq;
        for (double v : g.values()) sq.push_back(v * v);
        const auto sq_inc = increasing_rearrangement(GridFunction(g.T(), sq));
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(sq_inc[i] == gi[i] * gi[i]);
        std::uniform_real_distribution<double> level(0.0, 1.1);
        for (int k = 0; k < 20; ++k) {
            const double s = level(rng);
            CHECK(distribution_function(g, s) == distribution_function(gd, s));
            CHECK(distribution_function(g, s) == distribution_function(gi, s));
        }
    }
}

TEST_CASE("Hardy-Littlewood pairing") {
    const auto f = GridFunction(2.0, {2.0, 0.0});
    const auto g = GridFunction(2.0, {0.0, 2.0});
    const auto pr = hardy_littlewood_pairing(f, g);
    CHECK(pr.lhs == 0.0);
    CHECK(pr.rhs == doctest::Approx(4.0));
    const auto c = constant(5, 1.0, 0.7);
    const auto h = GridFunction(1.0, {0.1, 0.5, 0.2, 0.9, 0.3});
    const auto pc = hardy_littlewood_pairing(c, h);
    CHECK(pc.lhs == doctest::Approx(pc.rhs));
    const auto ff = hardy_littlewood_pairing(h, h);
    CHECK(ff.lhs == doctest::Approx(std::pow(lp_norm(h, 2.0), 2)));
    CHECK(ff.rhs == doctest::Approx(ff.lhs));
    CHECK(code_of([&] { hardy_littlewood_pairing(f, h); }) == ErrorCode::kGridMismatch);

    std::mt19937_64 rng(22);
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const auto p = hardy_littlewood_pairing(random_grid_function(rng, n, 1.0), random_grid_function(rng, n, 1.0));
        if (p.lhs > p.rhs * (1.0 + 1e-14)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("lp norms") {
    const auto c = constant(7, 3.0, 2.0);
    for (double p : {0.5, 1.0, 2.0, 5.0}) CHECK(lp_norm(c, p) == doctest::Approx(2.0 * std::pow(3.0, 1.0 / p)));
    CHECK(lp_norm(c, kInfinityExponent) == 2.0);
    CHECK(lp_norm(GridFunction(2.0, {3.0, 4.0}), 2.0) == doctest::Approx(5.0));
    std::mt19937_64 rng(23);
    const double ps[] = {0.5, 1.0, 2.0, 5.0, kInfinityExponent};
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_grid_function(rng, 1 + rng() % 64, 2.0);
        const auto report = rearrangement_report(f, ps);
        for (const auto& chk : report.p_norms_checked) {
            CHECK(std::abs(chk.original - chk.rearranged) <= 1e-12 * chk.original);
            CHECK(std::abs(lp_norm(decreasing_rearrangement(f), chk.p) - chk.original) <= 1e-12 * chk.original);
        }
    }
}

TEST_CASE("bihari_bound") {
    std::mt19937_64 rng(24);
    const BihariInstance unit(constant(64, 1.0, 1.0), constant(64, 1.0, 1.0), 0.5, 1.0);
    // (1 + int_0^1 ds)^2
    CHECK(bihari_bound(unit, 1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(bihari_bound(unit, 1.0, 0.5) == doctest::Approx(2.25).epsilon(1e-14));
    const BihariInstance zero_psi(constant(16, 2.0, 1.5), constant(16, 2.0, 0.0), 0.7, 0.4);
    CHECK(bihari_bound(zero_psi, 1.3, 1.1) == doctest::Approx(1.5).epsilon(1e-14));

    // beta = 0: closed-form fractional integral of a constant psi
    const BihariInstance lin(constant(32, 1.0, 0.5), constant(32, 1.0, 2.0), 0.0, 0.5);
    CHECK(bihari_bound(lin, 1.0, 1.0) == doctest::Approx(0.5 + 2.0 * 2.0).epsilon(1e-13));

    // beta = 0 collapse: K_t(t) is the hypothesis right-hand side for any phi
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_bihari_instance(rng, 48, 1.5, 0.0, 0.1 + 0.045 * trial);
        const auto k = bound_at_nodes(inst);
        NodalSamples phi{inst.T(), std::vector<double>(49, 0.3)};
        const auto rhs = hypothesis_rhs(inst, phi);
        for (std::size_t i = 0; i < k.values.size(); ++i) CHECK(std::abs(k.values[i] - rhs.values[i]) <= 1e-13 * k.values[i]);
    }
    CHECK(code_of([] { BihariInstance(constant(4, 1.0, 1.0), constant(4, 1.0, 1.0), 1.0, 0.5); }) == ErrorCode::kOutOfRange);
    CHECK(code_of([] { BihariInstance(GridFunction(1.0, {2.0, 1.0}), constant(2, 1.0, 1.0), 0.5, 0.5); }) ==
          ErrorCode::kInvalidArgument);
}

TEST_CASE("volterra oracle") {
    // phi = 1 + int_0^t sqrt(phi)  =>  phi(t) = (1 + t/2)^2
    const BihariInstance ode(constant(256, 1.0, 1.0), constant(256, 1.0, 1.0), 0.5, 1.0);
    const auto sol = volterra_oracle(ode);
    CHECK(sol.phi.values.back() == doctest::Approx(2.25).epsilon(1e-9));
    for (std::size_t i = 0; i < sol.phi.values.size(); i += 32) {
        const double t = sol.phi.node(i);
        CHECK(std::abs(sol.phi.values[i] - (1 + t / 2) * (1 + t / 2)) < 1e-9);
    }
    const BihariInstance no_psi(GridFunction(1.0, {1.0, 2.0, 3.0}), constant(3, 1.0, 0.0), 0.3, 0.5);
    const auto flat = volterra_oracle(no_psi);
    CHECK(flat.phi.values == std::vector<double>{1.0, 1.0, 2.0, 3.0});
    // beta = 0 is the fractional integral of psi added to a
    std::mt19937_64 rng(25);
    const auto inst = random_bihari_instance(rng, 40, 1.0, 0.0, 0.3);
    const auto lin = volterra_oracle(inst);
    const auto k = bound_at_nodes(inst);
    for (std::size_t i = 0; i < k.values.size(); ++i) CHECK(lin.phi.values[i] == doctest::Approx(k.values[i]).epsilon(1e-12));
    CHECK(code_of([&] { volterra_oracle(ode, 1e-10, 2); }) == ErrorCode::kNoConvergence);
}

TEST_CASE("bihari_verify") {
    const BihariInstance ode(constant(128, 1.0, 1.0), constant(128, 1.0, 1.0), 0.5, 1.0);
    auto sol = volterra_oracle(ode);
    NodalSamples below = sol.phi;
    for (auto& v : below.values) v -= 1e-6;
    const auto rep = bihari_verify(ode, below);
    CHECK(rep.verified);
    CHECK(rep.hypothesis_margin > 0.0);

    const BihariInstance half(GridFunction(1.0, {1.0, 2.0, 2.0, 4.0}), constant(4, 1.0, 0.0), 0.5, 0.5);
    NodalSamples halved{1.0, {0.5, 0.5, 1.0, 1.0, 2.0}};
    CHECK(bihari_verify(half, halved).verified);

    // beta = 0: equality case closes with slack about epsilon
    std::mt19937_64 rng(26);
    const auto lin = random_bihari_instance(rng, 32, 1.0, 0.0, 0.6);
    auto phi = bound_at_nodes(lin);
    for (auto& v : phi.values) v -= 1e-7;
    const auto r0 = bihari_verify(lin, phi);
    CHECK(r0.verified);
    CHECK(r0.max_violation < 0.0);

    NodalSamples too_big = sol.phi;
    too_big.values[10] += 1.0;
    CHECK(code_of([&] { bihari_verify(ode, too_big); }) == ErrorCode::kHypothesisFailed);
    CHECK(code_of([&] { bihari_verify(ode, NodalSamples{1.0, {1.0, 1.0}}); }) == ErrorCode::kGridMismatch);
}

TEST_CASE("bihari soundness on random instances with gamma >= 0.2") {
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> ub(0.0, 0.9), ug(0.2, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = random_bihari_instance(rng, 64, 1.0, ub(rng), ug(rng));
        const auto sol = volterra_oracle(inst);
        const auto rep = bihari_verify(inst, sol.phi, HypothesisMode::kAllowEquality);
        CHECK_MESSAGE(rep.verified, "beta=", inst.beta, " gamma=", inst.gamma, " violation=", rep.max_violation);
    }
}

TEST_CASE("bihari bound fails for strongly singular kernels") {
    // Continuous data a = 1 + t/2, psi = (1 + sin 20t)/2 sampled on cells. The
    // equality-case solution exceeds K by about 43% and the gap is stable under
    // refinement, so the conclusion does not hold for gamma this small.
    auto make = [](std::size_t n) {
        std::vector<double> a(n), psi(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            a[i] = 1.0 + 0.5 * x;
            psi[i] = 0.5 + 0.5 * std::sin(20.0 * x);
        }
        return BihariInstance(GridFunction(1.0, a), GridFunction(1.0, psi), 0.5, 0.12);
    };
    const auto coarse = make(256);
    const auto fine = make(1024);
    const double v1 = bihari_verify(coarse, volterra_oracle(coarse).phi, HypothesisMode::kAllowEquality).max_violation;
    const double v2 = bihari_verify(fine, volterra_oracle(fine).phi, HypothesisMode::kAllowEquality).max_violation;
    CHECK(v1 > 0.4);
    CHECK(v2 > 0.4);
    CHECK(std::abs(v1 - v2) < 0.02);
}

TEST_CASE("corollary_norm_bound") {
    CHECK(corollary_exponent(0.0, 0.5, 1.0) == doctest::Approx(2.0));
    const BihariInstance no_psi(GridFunction(1.0, {1.0, 2.0, 3.0}), constant(3, 1.0, 0.0), 0.0, 0.5);
    const auto rep = corollary_norm_bound(no_psi, 1.0);
    CHECK(rep.lhs == doctest::Approx(rep.a_norm).epsilon(1e-14));
    CHECK(rep.psi_term == 0.0);
    const BihariInstance bad(constant(4, 1.0, 1.0), constant(4, 1.0, 1.0), 0.5, 1.0);
    CHECK(code_of([&] { corollary_norm_bound(bad, 1.0); }) == ErrorCode::kExponentInadmissible);

    std::mt19937_64 rng(28);
    double lo = 1e300, hi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_bihari_instance(rng, 64, 1.0, 0.2, 0.3);
        const double ratio = corollary_norm_bound(inst, 1.0).ratio;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("riesz convolution") {
    const auto zero = riesz_convolution(constant(16, 1.0, 0.0), 0.3);
    for (double v : zero.values()) CHECK(v == 0.0);
    const std::size_t n = 50;
    const auto g = riesz_convolution(constant(n, 1.0, 1.0), 0.5);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        CHECK(g[i] == doctest::Approx(2.0 * (std::sqrt(t) + std::sqrt(1.0 - t))).epsilon(1e-12));
    }
    const auto sym = riesz_convolution(GridFunction(2.0, {0.1, 0.4, 0.9, 0.9, 0.4, 0.1}), 0.7);
    for (std::size_t i = 0; i < 3; ++i) CHECK(sym[i] == doctest::Approx(sym[5 - i]).epsilon(1e-14));
    CHECK(code_of([] { riesz_convolution(constant(4, 1.0, 1.0), 1.0); }) == ErrorCode::kAlphaOutOfRange);
}

TEST_CASE("singular beta integral") {
    const auto flat = singular_beta_integral(0.3, 2.3, 0.0, 0.0);
    CHECK(flat.value == doctest::Approx(2.0));
    CHECK(flat.bound == doctest::Approx(2.0));
    const auto half = singular_beta_integral(0.0, 1.0, 0.5, 0.0);
    CHECK(half.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(half.bound == doctest::Approx(3.0 * std::sqrt(0.5)).epsilon(1e-14));
    CHECK(code_of([] { singular_beta_integral(0.0, 1.0, 1.1, 0.0); }) == ErrorCode::kNonIntegrable);
    CHECK(code_of([] { singular_beta_integral(0.0, 1.0, 0.2, 1.0); }) == ErrorCode::kNonIntegrable);

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    for (int trial = 0; trial < 30; ++trial) {
        const double theta = u(rng), beta = u(rng), s = u(rng), T = s + 0.1 + u(rng);
        const auto r = singular_beta_integral(s, T, theta, beta);
        CHECK(r.value == doctest::Approx(beta_integral_oracle(s, T, theta, beta)).epsilon(1e-6));
        CHECK(r.value <= r.bound * (1.0 + 1e-10));
    }
}
