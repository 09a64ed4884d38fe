#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "navier_norms/errors.hpp"
#include "navier_norms/spectral.hpp"

namespace navier_norms::spectral {

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) fail(ErrorCode::kInvalidArgument, key + ": " + what);
}

void mask_dealiased(SpectralField& f) {
    for (int c = 0; c < 3; ++c) {
        auto comp = f.component(c);
        f.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
            if (!f.retained(kx, ky, kz)) comp[i] = Complex{};
        });
    }
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y, std::size_t upto) {
    double s = 0.0;
    for (std::size_t i = 1; i <= upto && i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

void SolverConfig::validate() const {
    require(N >= 8 && (N & (N - 1)) == 0, "N", "must be a power of two >= 8");
    require(nu > 0.0 && std::isfinite(nu), "nu", "must be positive");
    require(dt > 0.0 && std::isfinite(dt), "dt", "must be positive");
    require(T > 0.0 && std::isfinite(T), "T", "must be positive");
    require(dt <= T, "dt", "must not exceed T");
    require(initial_condition == "taylor_green" || initial_condition == "random", "initial_condition",
            "must be taylor_green or random");
    require(std::isfinite(amplitude), "amplitude", "must be finite");
    require(forcing == "none" || forcing == "taylor_green", "forcing", "must be none or taylor_green");
    require(std::isfinite(forcing_amplitude), "forcing_amplitude", "must be finite");
    require(sample_stride > 0.0 && std::isfinite(sample_stride), "sample_stride", "must be positive");
    require(tail_fraction >= 0.0 && tail_fraction <= 1.0, "tail_fraction", "must lie in [0, 1]");
    require(snapshot_stride >= 0.0 && std::isfinite(snapshot_stride), "snapshot_stride", "must be >= 0");
    for (const auto& n : norms) {
        require(n.k >= 0 && n.k <= 2, "norms", "derivative order must be 0, 1 or 2");
        require(n.r >= 1.0 || std::isinf(n.r), "norms", "exponent must be >= 1 or inf");
        require(!(std::isinf(n.r) && n.r < 0), "norms", "exponent must be >= 1 or inf");
    }
    for (double th : thetas) require(std::isfinite(th), "theta", "must be finite");
}

int SolverConfig::steps() const {
    return std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
}

double SolverConfig::step_size() const { return T / steps(); }

std::vector<std::pair<double, double>> NormTrajectory::series(int k, double r) const {
    std::vector<std::pair<double, double>> out;
    for (const auto& s : samples)
        if (s.k == k && s.r == r) out.emplace_back(s.t, s.value);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ---------------------------------------------------------------------------

void EnergyAccumulator::add(double t, const SpectralField& u, const SpectralField* forcing) {
    const double u2 = l2_norm_squared(u);
    const double g2 = gradient_l2_norm_squared(u);
    report_.times.push_back(t);
    report_.energy.push_back(0.5 * u2);
    report_.dissipation.push_back(nu_ * g2);
    report_.forcing_work.push_back(forcing ? inner_product(*forcing, u) : 0.0);
    report_.forcing_norm.push_back(forcing ? std::sqrt(l2_norm_squared(*forcing)) : 0.0);
    velocity_norm_.push_back(std::sqrt(u2));
}

EnergyReport EnergyAccumulator::finish() const {
    EnergyReport r = report_;
    const std::size_t n = r.times.size();
    if (n == 0) return r;
    const std::size_t last = n - 1;

    const double dissipated = trapezoid(r.times, r.dissipation, last);
    const double work = trapezoid(r.times, r.forcing_work, last);
    const double e0 = r.energy.front();
    const double imbalance = std::abs(r.energy.back() - e0 + dissipated - work);
    r.balance_residual = e0 > 0.0 ? imbalance / e0 : imbalance;
    r.integrated_gradient_l2_squared = dissipated / nu_;

    const double u0 = velocity_norm_.front();
    const double forcing_total = trapezoid(r.times, r.forcing_norm, last);
    double res1 = std::numeric_limits<double>::infinity();
    double res2 = std::numeric_limits<double>::infinity();
    double grad_running = 0.0, forcing_running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double h = r.times[i] - r.times[i - 1];
            grad_running += 0.5 * h * (r.dissipation[i] + r.dissipation[i - 1]) / nu_;
            forcing_running += 0.5 * h * (r.forcing_norm[i] + r.forcing_norm[i - 1]);
        }
        res1 = std::min(res1, u0 + 0.5 * forcing_total - velocity_norm_[i]);
        res2 = std::min(res2, (u0 * u0 + velocity_norm_[i] * forcing_running) / nu_ - grad_running);
    }
    r.leray_residual = res1;
    r.leray_dissipation_residual = res2;
    return r;
}

EnergyReport energy_report(std::span<const TimedField> trajectory, const SolverConfig& config) {
    std::optional<SpectralField> forcing;
    if (config.forcing == "taylor_green" && !trajectory.empty())
        forcing = init_taylor_green(trajectory.front().field.N(), config.nu, config.forcing_amplitude);
    EnergyAccumulator acc(config.nu);
    for (const auto& tf : trajectory) acc.add(tf.t, tf.field, forcing ? &*forcing : nullptr);
    return acc.finish();
}

// ---------------------------------------------------------------------------

NavierStokesSolver::NavierStokesSolver(const SolverConfig& config) : config_(config), fft_(config.N) {
    config_.validate();
    if (config_.forcing == "taylor_green") {
        SpectralField f = init_taylor_green(config_.N, config_.nu, config_.forcing_amplitude);
        mask_dealiased(f);
        forcing_ = leray_project(f);
    }
    for (auto& u : u_phys_) u.resize(fft_.points());
    product_.resize(fft_.points());
    const SpectralField shape(config_.N, config_.nu);
    const std::size_t nm = shape.modes();
    for (auto& p : product_hat_) p.resize(nm);
    for (auto& w : wave_) w.resize(nm);
    k2_.resize(nm);
    keep_.resize(nm);
    shape.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
        keep_[i] = shape.retained(kx, ky, kz) ? 1 : 0;
        wave_[0][i] = kx;
        wave_[1][i] = ky;
        wave_[2][i] = kz;
        k2_[i] = double(kx) * kx + double(ky) * ky + double(kz) * kz;
    });
    work_.assign(5, shape);
}

SpectralField NavierStokesSolver::initial_state() const {
    SpectralField u = config_.initial_condition == "random"
                          ? init_random(config_.N, config_.nu, config_.seed)
                          : init_taylor_green(config_.N, config_.nu, config_.amplitude);
    if (config_.initial_condition == "random") u *= config_.amplitude;
    mask_dealiased(u);
    return leray_project(u);
}

SpectralField NavierStokesSolver::rhs(const SpectralField& state, StepStats* stats) {
    if (state.N() != config_.N) fail(ErrorCode::kGridMismatch, "state grid differs from solver grid");
    SpectralField out(state.N(), state.nu());
    rhs_into(state, out, stats);
    return out;
}

void NavierStokesSolver::rhs_into(const SpectralField& state, SpectralField& out, StepStats* stats) {
    if (stats) stats->max_velocity = 0.0;
    if (config_.nonlinear) {
        for (int c = 0; c < 3; ++c) fft_.to_physical(state.component(c), u_phys_[static_cast<std::size_t>(c)]);
        if (stats) {
            double vmax = 0.0;
            for (std::size_t p = 0; p < fft_.points(); ++p) {
                const double m2 = u_phys_[0][p] * u_phys_[0][p] + u_phys_[1][p] * u_phys_[1][p] +
                                  u_phys_[2][p] * u_phys_[2][p];
                vmax = std::max(vmax, m2);
            }
            stats->max_velocity = std::sqrt(vmax);
        }
        // products ordered xx, xy, xz, yy, yz, zz
        int slot = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b, ++slot) {
                const auto& ua = u_phys_[static_cast<std::size_t>(a)];
                const auto& ub = u_phys_[static_cast<std::size_t>(b)];
                for (std::size_t p = 0; p < product_.size(); ++p) product_[p] = ua[p] * ub[p];
                fft_.to_spectral(product_, product_hat_[static_cast<std::size_t>(slot)]);
            }
        const auto &pxx = product_hat_[0], &pxy = product_hat_[1], &pxz = product_hat_[2], &pyy = product_hat_[3],
                   &pyz = product_hat_[4], &pzz = product_hat_[5];
        auto ox = out.component(0), oy = out.component(1), oz = out.component(2);
        for (std::size_t i = 0; i < out.modes(); ++i) {
            if (!keep_[i] || k2_[i] == 0.0) {
                ox[i] = oy[i] = oz[i] = Complex{};
                continue;
            }
            const double kx = wave_[0][i], ky = wave_[1][i], kz = wave_[2][i];
            // d = k . (u u)^, the nonlinear term is -i d projected
            const Complex dx = kx * pxx[i] + ky * pxy[i] + kz * pxz[i];
            const Complex dy = kx * pxy[i] + ky * pyy[i] + kz * pyz[i];
            const Complex dz = kx * pxz[i] + ky * pyz[i] + kz * pzz[i];
            const Complex s = (kx * dx + ky * dy + kz * dz) / k2_[i];
            const Complex px = dx - kx * s, py = dy - ky * s, pz = dz - kz * s;
            ox[i] = Complex{px.imag(), -px.real()};
            oy[i] = Complex{py.imag(), -py.real()};
            oz[i] = Complex{pz.imag(), -pz.real()};
        }
    } else {
        for (int c = 0; c < 3; ++c) std::fill(out.component(c).begin(), out.component(c).end(), Complex{});
    }
    if (forcing_) out += *forcing_;
}

SpectralField NavierStokesSolver::step(const SpectralField& state, double dt, StepStats* stats) {
    if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::kInvalidArgument, "dt must be positive");
    if (state.N() != config_.N) fail(ErrorCode::kGridMismatch, "state grid differs from solver grid");
    const double nu = config_.nu;
    const std::size_t nm = state.modes();
    if (dt != cached_dt_) {
        decay_.resize(nm);
        half_decay_.resize(nm);
        for (std::size_t i = 0; i < nm; ++i) {
            decay_[i] = std::exp(-nu * k2_[i] * dt);
            half_decay_[i] = std::exp(-nu * k2_[i] * 0.5 * dt);
        }
        cached_dt_ = dt;
    }
    const auto& E = decay_;
    const auto& Eh = half_decay_;

    SpectralField& a = work_[0];
    SpectralField& b = work_[1];
    SpectralField& cc = work_[2];
    SpectralField& d = work_[3];
    SpectralField& stage = work_[4];

    rhs_into(state, a, stats);
    for (int c = 0; c < 3; ++c) {
        std::span<const Complex> s = state.component(c), ak = a.component(c);
        auto o = stage.component(c);
        for (std::size_t i = 0; i < nm; ++i) o[i] = Eh[i] * (s[i] + 0.5 * dt * ak[i]);
    }
    rhs_into(stage, b, nullptr);
    for (int c = 0; c < 3; ++c) {
        std::span<const Complex> s = state.component(c), bk = b.component(c);
        auto o = stage.component(c);
        for (std::size_t i = 0; i < nm; ++i) o[i] = Eh[i] * s[i] + 0.5 * dt * bk[i];
    }
    rhs_into(stage, cc, nullptr);
    for (int c = 0; c < 3; ++c) {
        std::span<const Complex> s = state.component(c), ck = cc.component(c);
        auto o = stage.component(c);
        for (std::size_t i = 0; i < nm; ++i) o[i] = E[i] * s[i] + dt * Eh[i] * ck[i];
    }
    rhs_into(stage, d, nullptr);
    SpectralField next(state.N(), nu);
    for (int c = 0; c < 3; ++c) {
        std::span<const Complex> s = state.component(c), ak = a.component(c), bk = b.component(c),
                                 ck = cc.component(c),
             dk = d.component(c);
        auto o = next.component(c);
        for (std::size_t i = 0; i < nm; ++i)
            o[i] = E[i] * s[i] + (dt / 6.0) * (E[i] * ak[i] + 2.0 * Eh[i] * (bk[i] + ck[i]) + dk[i]);
    }
    if (stats) stats->cfl = stats->max_velocity * dt * config_.N / (2.0 * std::numbers::pi);
    return next;
}

// ---------------------------------------------------------------------------

SimulationResult simulate(const SolverConfig& config) {
    config.validate();
    NavierStokesSolver solver(config);
    Transform fft(config.N);
    SimulationResult result;

    const int nsteps = config.steps();
    const double dt = config.step_size();
    const int stride = std::max(1, static_cast<int>(std::lround(config.sample_stride / dt)));
    const int tail_start = nsteps - static_cast<int>(std::ceil(config.tail_fraction * nsteps - 1e-9));
    const int snap_stride =
        config.snapshot_stride > 0.0 ? std::max(1, static_cast<int>(std::lround(config.snapshot_stride / dt))) : 0;

    std::map<int, std::vector<double>> by_k;
    for (const auto& req : config.norms) {
        auto& rs = by_k[req.k];
        if (std::find(rs.begin(), rs.end(), req.r) == rs.end()) rs.push_back(req.r);
    }

    const SpectralField* forcing = solver.forcing() ? &*solver.forcing() : nullptr;
    EnergyAccumulator energy(config.nu);

    auto record = [&](int j, double t, const SpectralField& u) {
        energy.add(t, u, forcing);
        if (j == 0 || j == nsteps || j % stride == 0 || j >= tail_start) {
            result.norms.times.push_back(t);
            for (const auto& [k, rs] : by_k) {
                const auto mag = derivative_magnitude(u, k, fft);
                for (double r : rs) result.norms.samples.push_back({t, k, r, lebesgue_norm_from_magnitude(mag, r)});
            }
        }
        if (snap_stride > 0 && (j % snap_stride == 0 || j == nsteps)) result.snapshots.push_back({t, u});
    };

    SpectralField u = solver.initial_state();
    record(0, 0.0, u);
    for (int j = 1; j <= nsteps; ++j) {
        StepStats stats;
        u = solver.step(u, dt, &stats);
        const double t = j == nsteps ? config.T : j * dt;
        if (!std::isfinite(l2_norm_squared(u)))
            fail(ErrorCode::kNonFinite,
                 "non-finite coefficients at step " + std::to_string(j) + " (t = " + std::to_string(t) + ")");
        result.max_cfl = std::max(result.max_cfl, stats.cfl);
        if (stats.cfl > 0.5) {
            if (result.cfl_warnings == 0)
                std::clog << "warning: CFL number " << stats.cfl << " exceeds 0.5 at step " << j << '\n';
            ++result.cfl_warnings;
        }
        result.divergence_history.push_back(divergence_error(u));
        record(j, t, u);
    }
    result.steps = nsteps;
    result.energy = energy.finish();
    return result;
}

// ---------------------------------------------------------------------------

double mixed_norm(const NormTrajectory& traj, int k, double r, double r_tilde) {
    const auto s = traj.series(k, r);
    if (s.empty()) fail(ErrorCode::kMissingSamples, "no samples for k = " + std::to_string(k) + ", r = " + std::to_string(r));
    if (std::isinf(r_tilde)) {
        double m = 0.0;
        for (const auto& [t, v] : s) m = std::max(m, v);
        return m;
    }
    if (!(r_tilde > 0.0)) fail(ErrorCode::kOutOfRange, "r_tilde must be positive");
    if (s.size() < 2) fail(ErrorCode::kMissingSamples, "a finite time exponent needs at least two samples");
    double sum = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
        sum += 0.5 * (s[i].first - s[i - 1].first) *
               (std::pow(s[i].second, r_tilde) + std::pow(s[i - 1].second, r_tilde));
    return std::pow(sum, 1.0 / r_tilde);
}

double weighted_singular_integral(const NormTrajectory& traj, int k, double r, double theta, double T) {
    if (!(theta < 1.0)) fail(ErrorCode::kNonIntegrable, "theta must be < 1 for (T - t)^{-theta} to be integrable");
    if (!(T > 0.0)) fail(ErrorCode::kInvalidArgument, "T must be positive");
    const auto s = traj.series(k, r);
    if (s.size() < 2) fail(ErrorCode::kMissingSamples, "need at least two samples for k = " + std::to_string(k));
    const double tol = 1e-9 * std::max(1.0, T);
    if (s.front().first > tol || s.back().first < T - tol)
        fail(ErrorCode::kMissingSamples, "samples do not cover [0, T]");
    if (s.back().first > T + tol) fail(ErrorCode::kInvalidArgument, "samples extend past T");

    // On a segment the interpolant is c0 + c1 u with u = T - t, integrated exactly against u^{-theta}.
    const double e1 = 1.0 - theta, e2 = 2.0 - theta;
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        const double ua = std::max(0.0, T - s[j].first);
        const double ub = std::max(0.0, T - s[j + 1].first);
        const double h = ua - ub;
        if (h <= 0.0) continue;
        const double c1 = (s[j].second - s[j + 1].second) / h;
        const double c0 = s[j + 1].second - c1 * ub;
        total += c0 * (std::pow(ua, e1) - std::pow(ub, e1)) / e1 + c1 * (std::pow(ua, e2) - std::pow(ub, e2)) / e2;
    }
    return total;
}

}  // namespace navier_norms::spectral
