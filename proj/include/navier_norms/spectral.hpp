#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace navier_norms::spectral {

using Complex = std::complex<double>;

/// Three-component vector field on the periodic box [0, 2pi)^3, stored as the
/// r2c half lattice: N x N x (N/2 + 1) coefficients per component with
/// u(x) = sum_k c_k exp(i k.x). The omitted half follows from c_{-k} = conj(c_k).
class SpectralField {
public:
    SpectralField(int N, double nu);

    int N() const noexcept { return N_; }
    int nz() const noexcept { return N_ / 2 + 1; }
    double nu() const noexcept { return nu_; }
    std::size_t modes() const noexcept { return static_cast<std::size_t>(N_) * N_ * nz(); }

    std::span<Complex> component(int c) { return comps_[static_cast<std::size_t>(c)]; }
    std::span<const Complex> component(int c) const { return comps_[static_cast<std::size_t>(c)]; }

    std::size_t index(int ix, int iy, int iz) const noexcept {
        return (static_cast<std::size_t>(ix) * N_ + static_cast<std::size_t>(iy)) * nz() + static_cast<std::size_t>(iz);
    }
    /// Signed wavenumber of lattice index i along x or y.
    int wavenumber(int i) const noexcept { return i <= N_ / 2 ? i : i - N_; }
    /// 1 for the z = 0 and Nyquist planes, 2 for the planes that stand for a conjugate pair.
    double plane_weight(int iz) const noexcept { return (iz == 0 || iz == N_ / 2) ? 1.0 : 2.0; }
    /// Two-thirds rule: modes with some |k_i| > N/3 are zero.
    bool retained(int kx, int ky, int kz) const noexcept {
        const int cut = N_ / 3;
        return std::abs(kx) <= cut && std::abs(ky) <= cut && std::abs(kz) <= cut;
    }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator*=(double s);

    /// Calls fn(index, kx, ky, kz) for every stored mode.
    template <class Fn>
    void for_each_mode(Fn&& fn) const {
        for (int ix = 0; ix < N_; ++ix) {
            const int kx = wavenumber(ix);
            for (int iy = 0; iy < N_; ++iy) {
                const int ky = wavenumber(iy);
                std::size_t idx = index(ix, iy, 0);
                for (int iz = 0; iz < nz(); ++iz, ++idx) fn(idx, kx, ky, iz);
            }
        }
    }

private:
    int N_;
    double nu_;
    std::array<std::vector<Complex>, 3> comps_;
};

/// Owns FFTW plans and aligned buffers for one grid size. Not thread-safe.
class Transform {
public:
    explicit Transform(int N);
    ~Transform();
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    int N() const noexcept { return N_; }
    std::size_t points() const noexcept { return static_cast<std::size_t>(N_) * N_ * N_; }

    /// Physical samples on the uniform collocation grid x_j = 2 pi j / N.
    void to_physical(std::span<const Complex> coeffs, std::span<double> out);
    void to_spectral(std::span<const double> values, std::span<Complex> out);

private:
    int N_;
    double* real_ = nullptr;
    Complex* spec_ = nullptr;
    void* forward_ = nullptr;
    void* backward_ = nullptr;
};

// ---------------------------------------------------------------------------

/// Mode-wise I - k k^T / |k|^2; the mean mode is left untouched.
SpectralField leray_project(const SpectralField& field);

/// u0 = (sin x cos y cos z, -cos x sin y cos z, 0).
SpectralField init_taylor_green(int N, double nu, double amplitude = 1.0);

/// Divergence-free, mean-zero field with random coefficients on |k|_inf <= kmax,
/// amplitude decaying like |k|^{-2}.
SpectralField init_random(int N, double nu, std::uint64_t seed, int kmax = 3);

/// Spectral curl, i k x u.
SpectralField vorticity(const SpectralField& field);

/// Inverse curl for divergence-free mean-zero vorticity: i k x w / |k|^2.
SpectralField biot_savart(const SpectralField& omega);

/// max over modes of |k . c_k| / (|k| |c_k|), skipping coefficients below 1e-14 of the largest one.
double divergence_error(const SpectralField& field);

/// Pointwise Frobenius magnitude of grad^k u on the collocation grid, k in {0,1,2}.
std::vector<double> derivative_magnitude(const SpectralField& field, int k, Transform& fft);

/// (mean of |grad^k u|^r times (2 pi)^3)^{1/r}; r = +inf gives the max.
double lebesgue_norm(const SpectralField& field, int k, double r, Transform& fft);
double lebesgue_norm_from_magnitude(std::span<const double> magnitude, double r);

/// ||u||_{L^2}^2 and ||grad u||_{L^2}^2 from the coefficients (Parseval).
double l2_norm_squared(const SpectralField& field);
double gradient_l2_norm_squared(const SpectralField& field);
/// <f, u>_{L^2}
double inner_product(const SpectralField& f, const SpectralField& u);

struct GnPair {
    double u_l6_squared = 0.0;
    double grad_l2_squared = 0.0;
};
GnPair gn_check(const SpectralField& field, Transform& fft);

// ---------------------------------------------------------------------------

struct NormRequest {
    int k = 0;
    double r = 2.0;
};

struct SolverConfig {
    int N = 32;
    double nu = 0.1;
    double dt = 1e-3;
    double T = 1.0;
    std::string initial_condition = "taylor_green";  // taylor_green | random
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    std::string forcing = "none";  // none | taylor_green (steady, amplitude forcing_amplitude)
    double forcing_amplitude = 0.0;
    double sample_stride = 0.01;   // time between norm samples
    double tail_fraction = 0.1;    // final fraction of [0, T] sampled every step
    double snapshot_stride = 0.0;  // 0 disables snapshots
    bool nonlinear = true;
    std::vector<NormRequest> norms{{0, 2.0}, {0, 6.0}, {1, 2.0}, {1, 3.0}};
    std::vector<double> thetas{0.2};

    /// Throws kInvalidArgument with the offending key.
    void validate() const;
    int steps() const;
    double step_size() const;
};

struct NormSample {
    double t = 0.0;
    int k = 0;
    double r = 0.0;
    double value = 0.0;
};

struct NormTrajectory {
    std::vector<double> times;
    std::vector<NormSample> samples;

    /// Time-ordered values for one (k, r); empty if absent.
    std::vector<std::pair<double, double>> series(int k, double r) const;
};

struct EnergyReport {
    std::vector<double> times;
    std::vector<double> energy;        // 1/2 ||u||^2
    std::vector<double> dissipation;   // nu ||grad u||^2
    std::vector<double> forcing_work;  // <f, u>
    std::vector<double> forcing_norm;  // ||f||
    double balance_residual = 0.0;           // |E(T) - E(0) + int D - int W| / E(0)
    double leray_residual = 0.0;             // min over t of rhs - lhs, velocity bound
    double leray_dissipation_residual = 0.0; // min over t of rhs - lhs, dissipation bound
    double integrated_gradient_l2_squared = 0.0;  // trapezoid of ||grad u||^2 over [0, T]
};

/// Accumulates the energy record one field at a time.
class EnergyAccumulator {
public:
    explicit EnergyAccumulator(double nu) : nu_(nu) {}
    void add(double t, const SpectralField& u, const SpectralField* forcing);
    EnergyReport finish() const;

private:
    double nu_;
    EnergyReport report_;
    std::vector<double> velocity_norm_;
};

struct TimedField {
    double t = 0.0;
    SpectralField field;
};

EnergyReport energy_report(std::span<const TimedField> trajectory, const SolverConfig& config);

struct StepStats {
    double max_velocity = 0.0;
    double cfl = 0.0;
};

class NavierStokesSolver {
public:
    explicit NavierStokesSolver(const SolverConfig& config);

    SpectralField initial_state() const;
    const std::optional<SpectralField>& forcing() const noexcept { return forcing_; }

    /// One integrating-factor RK4 step of du/dt = -P div(u u) - nu |k|^2 u + P f.
    SpectralField step(const SpectralField& state, double dt, StepStats* stats = nullptr);

    /// -P div(u u) + P f, dealiased.
    SpectralField rhs(const SpectralField& state, StepStats* stats = nullptr);

private:
    void rhs_into(const SpectralField& state, SpectralField& out, StepStats* stats);

    SolverConfig config_;
    Transform fft_;
    std::optional<SpectralField> forcing_;
    std::array<std::vector<double>, 3> u_phys_;
    std::vector<double> product_;
    std::array<std::vector<Complex>, 6> product_hat_;
    std::array<std::vector<double>, 3> wave_;  // per-mode k_x, k_y, k_z (0 where dealiased)
    std::vector<double> k2_;
    std::vector<unsigned char> keep_;
    double cached_dt_ = -1.0;
    std::vector<double> decay_, half_decay_;
    std::vector<SpectralField> work_;  // stage derivatives a, b, c, d and a stage state
};

struct SimulationResult {
    NormTrajectory norms;
    EnergyReport energy;
    std::vector<TimedField> snapshots;
    std::vector<double> divergence_history;  // after every step
    int steps = 0;
    int cfl_warnings = 0;
    double max_cfl = 0.0;
};

/// Throws kNonFinite (naming the step) if a coefficient stops being finite.
SimulationResult simulate(const SolverConfig& config);

// ---------------------------------------------------------------------------

/// (sum over samples of value^{r~} dt, trapezoid)^{1/r~}; r~ = +inf gives the max.
double mixed_norm(const NormTrajectory& traj, int k, double r, double r_tilde);

/// int_0^T (T - t)^{-theta} ||grad^k u||_{L^r} dt for the piecewise-linear
/// interpolant of the samples, integrated exactly against the weight.
double weighted_singular_integral(const NormTrajectory& traj, int k, double r, double theta, double T);

}  // namespace navier_norms::spectral
