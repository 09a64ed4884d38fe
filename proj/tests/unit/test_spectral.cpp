#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "navier_norms/errors.hpp"
#include "navier_norms/spectral.hpp"

using namespace navier_norms::spectral;
using navier_norms::Error;
using navier_norms::ErrorCode;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kOk;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto x = a.component(c), y = b.component(c);
        for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

double max_abs(const SpectralField& a) { return max_abs_diff(a, SpectralField(a.N(), a.nu())); }

// Arbitrary (not divergence-free) real field with low-mode content.
SpectralField random_raw_field(int N, std::uint64_t seed) {
    SpectralField f(N, 1.0);
    Transform fft(N);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> vals(fft.points());
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k) {
                    const double x = 2 * kPi * i / N, y = 2 * kPi * j / N, z = 2 * kPi * k / N;
                    vals[(std::size_t(i) * N + j) * N + k] =
                        u(rng) * 0 + std::sin(x + c) * std::cos(2 * y) + 0.3 * std::cos(z - y + c) +
                        0.1 * (c + 1) * std::sin(x + y + z);
                }
        fft.to_spectral(vals, f.component(c));
    }
    // add random perturbations on low modes, symmetrised through the transform
    for (int c = 0; c < 3; ++c) {
        auto comp = f.component(c);
        f.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
            if (std::abs(kx) <= 2 && std::abs(ky) <= 2 && kz <= 2) comp[i] += std::complex<double>{u(rng), u(rng)} * 0.2;
        });
        fft.to_physical(comp, vals);
        fft.to_spectral(vals, comp);
    }
    return f;
}

template <class F>
double grid_integral(int N, F&& f) {
    double s = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) s += f(2 * kPi * i / N, 2 * kPi * j / N, 2 * kPi * k / N);
    return s * std::pow(2 * kPi / N, 3);
}

SolverConfig small_config() {
    SolverConfig c;
    c.N = 16;
    c.nu = 0.1;
    c.dt = 1e-2;
    c.T = 0.2;
    c.sample_stride = 0.02;
    return c;
}

}  // namespace

TEST_CASE("leray projector") {
    const SpectralField f = random_raw_field(16, 3);
    const SpectralField pf = leray_project(f);
    CHECK(divergence_error(pf) < 1e-14);
    CHECK(max_abs_diff(leray_project(pf), pf) < 1e-14);
    CHECK(max_abs_diff(leray_project(pf), pf) <= 1e-14 * max_abs(pf));

    SpectralField rest = f;
    SpectralField neg = pf;
    neg *= -1.0;
    rest += neg;
    CHECK(std::abs(inner_product(pf, rest)) <= 1e-12 * l2_norm_squared(f));

    SpectralField grad(16, 1.0);
    const std::complex<double> I{0.0, 1.0};
    grad.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
        if (std::abs(kx) > 3 || std::abs(ky) > 3 || kz > 3) return;
        const std::complex<double> phi{1.0 / (1 + kx * kx), 0.5 / (1 + ky * ky + kz)};
        grad.component(0)[i] = I * double(kx) * phi;
        grad.component(1)[i] = I * double(ky) * phi;
        grad.component(2)[i] = I * double(kz) * phi;
    });
    CHECK(max_abs(leray_project(grad)) < 1e-14);
    CHECK(max_abs(vorticity(grad)) < 1e-14);
}

TEST_CASE("taylor green initial datum") {
    const SpectralField u = init_taylor_green(64, 0.1);
    CHECK(divergence_error(u) == 0.0);
    bool only_low = true;
    for (int c = 0; c < 3; ++c) {
        auto comp = u.component(c);
        u.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
            if (std::abs(comp[i]) > 0 && (std::abs(kx) > 1 || std::abs(ky) > 1 || kz > 1)) only_low = false;
        });
    }
    CHECK(only_low);

    const double brute = grid_integral(64, [](double x, double y, double z) {
        const double a = std::sin(x) * std::cos(y) * std::cos(z), b = -std::cos(x) * std::sin(y) * std::cos(z);
        return a * a + b * b;
    });
    CHECK(l2_norm_squared(u) == doctest::Approx(brute).epsilon(1e-13));
    CHECK(brute == doctest::Approx(2 * kPi * kPi * kPi).epsilon(1e-13));

    Transform fft(64);
    const double grad_brute = grid_integral(64, [](double x, double y, double z) {
        const double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y), sz = std::sin(z),
                     cz = std::cos(z);
        const double g[6] = {cx * cy * cz, -sx * sy * cz, -sx * cy * sz, sx * sy * cz, -cx * cy * cz, cx * sy * sz};
        double s = 0;
        for (double v : g) s += v * v;
        return s;
    });
    CHECK(lebesgue_norm(u, 1, 2.0, fft) == doctest::Approx(std::sqrt(grad_brute)).epsilon(1e-12));
    CHECK(gradient_l2_norm_squared(u) == doctest::Approx(grad_brute).epsilon(1e-12));
}

TEST_CASE("vorticity and biot savart") {
    const int N = 16;
    Transform fft(N);
    const SpectralField u = init_taylor_green(N, 0.1);
    const SpectralField w = vorticity(u);
    CHECK(divergence_error(w) < 1e-15);

    std::vector<double> wx(fft.points()), wy(fft.points()), wz(fft.points());
    fft.to_physical(w.component(0), wx);
    fft.to_physical(w.component(1), wy);
    fft.to_physical(w.component(2), wz);
    double err = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                const double x = 2 * kPi * i / N, y = 2 * kPi * j / N, z = 2 * kPi * k / N;
                const std::size_t p = (std::size_t(i) * N + j) * N + k;
                err = std::max(err, std::abs(wx[p] + std::cos(x) * std::sin(y) * std::sin(z)));
                err = std::max(err, std::abs(wy[p] + std::sin(x) * std::cos(y) * std::sin(z)));
                err = std::max(err, std::abs(wz[p] - 2 * std::sin(x) * std::sin(y) * std::cos(z)));
            }
    CHECK(err < 1e-14);

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SpectralField v = init_random(N, 0.1, seed);
        CHECK(max_abs_diff(biot_savart(vorticity(v)), v) <= 1e-12 * max_abs(v));
        CHECK(divergence_error(vorticity(v)) < 1e-12);
    }
    CHECK(max_abs(biot_savart(SpectralField(N, 0.1))) == 0.0);

    // omega = (0, 0, cos x) inverts to u = (0, sin x, 0)
    SpectralField om(N, 0.1);
    om.component(2)[om.index(1, 0, 0)] = 0.5;
    om.component(2)[om.index(N - 1, 0, 0)] = 0.5;
    const SpectralField bs = biot_savart(om);
    std::vector<double> uy(fft.points()), ux(fft.points());
    fft.to_physical(bs.component(1), uy);
    fft.to_physical(bs.component(0), ux);
    double e2 = 0.0;
    for (int i = 0; i < N; ++i)
        for (int p = 0; p < N * N; ++p) {
            const std::size_t q = std::size_t(i) * N * N + p;
            e2 = std::max({e2, std::abs(uy[q] - std::sin(2 * kPi * i / N)), std::abs(ux[q])});
        }
    CHECK(e2 < 1e-15);
}

TEST_CASE("lebesgue norms") {
    const int N = 16;
    Transform fft(N);
    SpectralField c(N, 1.0);
    c.component(0)[0] = 1.0;
    c.component(1)[0] = -2.0;
    c.component(2)[0] = 2.0;
    for (double r : {1.0, 2.0, 3.5, 6.0})
        CHECK(lebesgue_norm(c, 0, r, fft) == doctest::Approx(3.0 * std::pow(2 * kPi, 3.0 / r)).epsilon(1e-14));
    CHECK(lebesgue_norm(c, 0, INFINITY, fft) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lebesgue_norm(c, 1, 2.0, fft) == doctest::Approx(0.0));

    const SpectralField f = random_raw_field(N, 9);
    const double grid = lebesgue_norm(f, 0, 2.0, fft);
    CHECK(grid * grid == doctest::Approx(l2_norm_squared(f)).epsilon(1e-12));
    const double g = lebesgue_norm(f, 1, 2.0, fft);
    CHECK(g * g == doctest::Approx(gradient_l2_norm_squared(f)).epsilon(1e-12));

    // Hessian Frobenius norm of Taylor-Green: every second derivative of a triple product has mean square 1/8
    const SpectralField tg = init_taylor_green(N, 0.1);
    const double h = lebesgue_norm(tg, 2, 2.0, fft);
    const double hess_brute = grid_integral(N, [](double x, double y, double z) {
        const double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y), sz = std::sin(z),
                     cz = std::cos(z);
        // u_x = sx cy cz
        const double a[9] = {-sx * cy * cz, -cx * sy * cz, -cx * cy * sz, -cx * sy * cz, -sx * cy * cz,
                             sx * sy * sz,  -cx * cy * sz, sx * sy * sz,  -sx * cy * cz};
        // u_y = -cx sy cz
        const double b[9] = {cx * sy * cz, sx * cy * cz, -sx * sy * sz, sx * cy * cz, cx * sy * cz,
                             cx * cy * sz, -sx * sy * sz, cx * cy * sz, cx * sy * cz};
        double s = 0;
        for (int i = 0; i < 9; ++i) s += a[i] * a[i] + b[i] * b[i];
        return s;
    });
    CHECK(h * h == doctest::Approx(hess_brute).epsilon(1e-12));
    CHECK(code_of([&] { lebesgue_norm(tg, 3, 2.0, fft); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("integrating factor step") {
    SolverConfig cfg = small_config();
    NavierStokesSolver solver(cfg);
    const SpectralField zero(cfg.N, cfg.nu);
    CHECK(max_abs(solver.step(zero, 1e-2)) == 0.0);

    cfg.nonlinear = false;
    NavierStokesSolver linear(cfg);
    const SpectralField tg = init_taylor_green(cfg.N, cfg.nu);
    const SpectralField next = linear.step(tg, 1e-2);
    SpectralField expect = tg;
    expect *= std::exp(-cfg.nu * 3.0 * 1e-2);
    CHECK(max_abs_diff(next, expect) < 1e-10 * max_abs(tg));

    SolverConfig full = small_config();
    full.N = 32;
    NavierStokesSolver ns(full);
    const SpectralField u0 = ns.initial_state();
    auto defect = [&](double dt) {
        const SpectralField one = ns.step(u0, dt);
        const SpectralField two = ns.step(ns.step(u0, dt / 2), dt / 2);
        return max_abs_diff(one, two);
    };
    const double d1 = defect(0.2), d2 = defect(0.1), d3 = defect(0.05);
    CHECK(d1 / d2 > 24.0);
    CHECK(d2 / d3 > 24.0);
    const double predicted = d3 * std::pow(1e-3 / 0.05, 5);
    CHECK(defect(1e-3) <= std::max(4.0 * predicted, 1e-15 * max_abs(u0)));
    CHECK(divergence_error(ns.step(u0, 1e-3)) < 1e-10);
}

TEST_CASE("simulate") {
    SolverConfig cfg = small_config();
    const SimulationResult a = simulate(cfg);
    const SimulationResult b = simulate(cfg);
    REQUIRE(a.norms.samples.size() == b.norms.samples.size());
    bool identical = true;
    for (std::size_t i = 0; i < a.norms.samples.size(); ++i)
        identical = identical && a.norms.samples[i].value == b.norms.samples[i].value &&
                    a.norms.samples[i].t == b.norms.samples[i].t;
    CHECK(identical);
    CHECK(a.energy.energy == b.energy.energy);
    CHECK(a.steps == 20);
    for (double d : a.divergence_history) CHECK(d <= 1e-10);
    CHECK(a.norms.times.front() == 0.0);
    CHECK(a.norms.times.back() == cfg.T);
    for (std::size_t i = 1; i < a.norms.times.size(); ++i) CHECK(a.norms.times[i] > a.norms.times[i - 1]);

    SolverConfig viscous = small_config();
    viscous.nu = 10.0;
    viscous.dt = 1e-3;
    viscous.T = 0.02;
    const SimulationResult v = simulate(viscous);
    for (std::size_t i = 1; i < v.energy.energy.size(); ++i) CHECK(v.energy.energy[i] < v.energy.energy[i - 1]);

    SolverConfig bad = small_config();
    bad.N = 12;
    CHECK(code_of([&] { simulate(bad); }) == ErrorCode::kInvalidArgument);
    bad = small_config();
    bad.dt = 0.0;
    CHECK(code_of([&] { simulate(bad); }) == ErrorCode::kInvalidArgument);

    SolverConfig blow = small_config();
    blow.N = 8;
    blow.nu = 1e-3;
    blow.amplitude = 1e3;
    blow.dt = 0.5;
    blow.T = 200.0;
    blow.sample_stride = 0.5;
    blow.norms = {{0, 2.0}};
    CHECK(code_of([&] { simulate(blow); }) == ErrorCode::kNonFinite);
}

TEST_CASE("resolution study") {
    SolverConfig cfg;
    cfg.T = 0.25;
    cfg.sample_stride = 0.05;
    cfg.norms = {{0, 2.0}};
    cfg.N = 32;
    const auto lo = simulate(cfg).norms.series(0, 2.0);
    cfg.N = 64;
    const auto hi = simulate(cfg).norms.series(0, 2.0);
    REQUIRE(lo.size() == hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i)
        CHECK(std::abs(lo[i].second - hi[i].second) <= 1e-4 * hi[i].second);
}

TEST_CASE("mixed norm") {
    NormTrajectory traj;
    for (int i = 0; i <= 10; ++i) {
        traj.times.push_back(0.3 * i);
        traj.samples.push_back({0.3 * i, 1, 3.0, 2.5});
        traj.samples.push_back({0.3 * i, 0, 2.0, 1.0 + i});
    }
    CHECK(mixed_norm(traj, 1, 3.0, 2.0) == doctest::Approx(2.5 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(mixed_norm(traj, 1, 3.0, 0.5) == doctest::Approx(2.5 * 9.0).epsilon(1e-14));
    CHECK(mixed_norm(traj, 0, 2.0, INFINITY) == 11.0);
    CHECK(code_of([&] { mixed_norm(traj, 2, 2.0, 1.0); }) == ErrorCode::kMissingSamples);

    SolverConfig cfg = small_config();
    cfg.sample_stride = cfg.dt;
    cfg.norms = {{1, 2.0}};
    const SimulationResult res = simulate(cfg);
    const double m = mixed_norm(res.norms, 1, 2.0, 2.0);
    CHECK(m * m == doctest::Approx(res.energy.integrated_gradient_l2_squared).epsilon(1e-10));
}

TEST_CASE("weighted singular integral") {
    NormTrajectory traj;
    const double T = 2.0;
    for (int i = 0; i <= 20; ++i) {
        const double t = T * i / 20.0;
        traj.times.push_back(t);
        traj.samples.push_back({t, 0, 2.0, 3.0});
        traj.samples.push_back({t, 1, 2.0, 1.0 + t * t});
    }
    for (double theta : {-0.5, 0.0, 0.2, 0.5, 0.9, 0.99})
        CHECK(weighted_singular_integral(traj, 0, 2.0, theta, T) ==
              doctest::Approx(3.0 * std::pow(T, 1 - theta) / (1 - theta)).epsilon(1e-8));
    double trap = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double a = T * (i - 1) / 20.0, b = T * i / 20.0;
        trap += 0.5 * (b - a) * (2.0 + a * a + b * b);
    }
    CHECK(weighted_singular_integral(traj, 1, 2.0, 0.0, T) == doctest::Approx(trap).epsilon(1e-13));
    CHECK(code_of([&] { weighted_singular_integral(traj, 0, 2.0, 1.0, T); }) == ErrorCode::kNonIntegrable);
    CHECK(code_of([&] { weighted_singular_integral(traj, 0, 2.0, 1.5, T); }) == ErrorCode::kNonIntegrable);
    CHECK(code_of([&] { weighted_singular_integral(traj, 0, 2.0, 0.2, 3.0); }) == ErrorCode::kMissingSamples);

    SolverConfig cfg = small_config();
    cfg.T = 1.0;
    cfg.dt = 1e-3;
    cfg.tail_fraction = 0.0;
    cfg.norms = {{0, 2.0}};
    cfg.sample_stride = 0.02;
    const double coarse = weighted_singular_integral(simulate(cfg).norms, 0, 2.0, 0.2, 1.0);
    cfg.sample_stride = 0.01;
    const double fine = weighted_singular_integral(simulate(cfg).norms, 0, 2.0, 0.2, 1.0);
    CHECK(std::abs(coarse - fine) < 0.01 * fine);
}

TEST_CASE("energy report") {
    SolverConfig cfg = small_config();
    cfg.N = 32;
    cfg.dt = 1e-3;
    cfg.T = 0.2;
    cfg.norms = {{0, 2.0}};
    const SimulationResult res = simulate(cfg);
    const auto& e = res.energy;
    for (std::size_t i = 0; i < e.energy.size(); ++i) {
        CHECK(e.energy[i] >= 0.0);
        CHECK(e.dissipation[i] >= 0.0);
        CHECK(std::sqrt(2 * e.energy[i]) <= std::sqrt(2 * e.energy[0]));
    }
    CHECK(e.leray_residual >= 0.0);
    CHECK(e.leray_dissipation_residual >= 0.0);
    CHECK(e.balance_residual <= 1e-6);

    SolverConfig forced = small_config();
    forced.forcing = "taylor_green";
    forced.forcing_amplitude = 0.1;
    forced.T = 1.0;
    const SimulationResult fr = simulate(forced);
    CHECK(fr.energy.leray_residual >= 0.0);
    CHECK(fr.energy.leray_dissipation_residual >= 0.0);
    CHECK(fr.energy.forcing_work.back() > 0.0);

    // the span overload reproduces the accumulated report
    std::vector<TimedField> fields;
    NavierStokesSolver ns(forced);
    SpectralField u = ns.initial_state();
    fields.push_back({0.0, u});
    for (int j = 1; j <= forced.steps(); ++j) {
        u = ns.step(u, forced.step_size());
        fields.push_back({j * forced.step_size(), u});
    }
    const EnergyReport again = energy_report(fields, forced);
    CHECK(again.balance_residual == doctest::Approx(fr.energy.balance_residual).epsilon(1e-6));
    CHECK(again.energy.back() == doctest::Approx(fr.energy.energy.back()).epsilon(1e-14));
}

TEST_CASE("gagliardo nirenberg pair") {
    Transform f16(16), f32(32);
    const GnPair z = gn_check(SpectralField(16, 1.0), f16);
    CHECK(z.u_l6_squared == 0.0);
    CHECK(z.grad_l2_squared == 0.0);

    SpectralField mode(16, 1.0);
    mode.component(1)[mode.index(1, 0, 0)] = std::complex<double>{0.0, -0.5};
    mode.component(1)[mode.index(15, 0, 0)] = std::complex<double>{0.0, 0.5};
    const GnPair m = gn_check(mode, f16);
    // u = (0, sin x, 0): ||u||_6^6 = (2pi)^2 * int sin^6 = (2pi)^3 * 5/16, ||grad u||^2 = 4 pi^3
    CHECK(m.u_l6_squared == doctest::Approx(std::pow(std::pow(2 * kPi, 3) * 5.0 / 16.0, 1.0 / 3.0)).epsilon(1e-13));
    CHECK(m.grad_l2_squared == doctest::Approx(4 * kPi * kPi * kPi).epsilon(1e-13));

    SolverConfig cfg = small_config();
    cfg.norms = {{0, 2.0}};
    cfg.snapshot_stride = 0.2;
    const auto lo = simulate(cfg).snapshots.back().field;
    cfg.N = 32;
    const auto hi = simulate(cfg).snapshots.back().field;
    const GnPair a = gn_check(lo, f16), b = gn_check(hi, f32);
    const double ra = a.u_l6_squared / a.grad_l2_squared, rb = b.u_l6_squared / b.grad_l2_squared;
    CHECK(std::abs(ra - rb) < 0.05 * rb);
}
