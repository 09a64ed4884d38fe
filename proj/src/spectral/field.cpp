#include "navier_norms/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "navier_norms/errors.hpp"

namespace navier_norms::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

SpectralField::SpectralField(int N, double nu) : N_(N), nu_(nu) {
    if (N < 8 || !power_of_two(N)) fail(ErrorCode::kInvalidArgument, "N must be a power of two >= 8");
    if (!(nu > 0.0) || !std::isfinite(nu)) fail(ErrorCode::kInvalidArgument, "nu must be positive");
    for (auto& c : comps_) c.assign(modes(), Complex{});
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (other.N_ != N_) fail(ErrorCode::kGridMismatch, "fields on different grids");
    for (int c = 0; c < 3; ++c) {
        auto& a = comps_[static_cast<std::size_t>(c)];
        const auto& b = other.comps_[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& comp : comps_)
        for (auto& v : comp) v *= s;
    return *this;
}

// ---------------------------------------------------------------------------

Transform::Transform(int N) : N_(N) {
    if (N < 8 || !power_of_two(N)) fail(ErrorCode::kInvalidArgument, "N must be a power of two >= 8");
    const std::size_t nreal = points();
    const std::size_t nspec = static_cast<std::size_t>(N) * N * (N / 2 + 1);
    real_ = fftw_alloc_real(nreal);
    spec_ = reinterpret_cast<Complex*>(fftw_alloc_complex(nspec));
    auto* spec = reinterpret_cast<fftw_complex*>(spec_);
    forward_ = fftw_plan_dft_r2c_3d(N, N, N, real_, spec, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_3d(N, N, N, spec, real_, FFTW_ESTIMATE);
}

Transform::~Transform() {
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
    fftw_free(real_);
    fftw_free(spec_);
}

void Transform::to_physical(std::span<const Complex> coeffs, std::span<double> out) {
    const std::size_t nspec = static_cast<std::size_t>(N_) * N_ * (N_ / 2 + 1);
    if (coeffs.size() != nspec || out.size() != points()) fail(ErrorCode::kGridMismatch, "transform size mismatch");
    std::copy(coeffs.begin(), coeffs.end(), spec_);
    fftw_execute(static_cast<fftw_plan>(backward_));
    std::copy(real_, real_ + points(), out.begin());
}

void Transform::to_spectral(std::span<const double> values, std::span<Complex> out) {
    const std::size_t nspec = static_cast<std::size_t>(N_) * N_ * (N_ / 2 + 1);
    if (out.size() != nspec || values.size() != points()) fail(ErrorCode::kGridMismatch, "transform size mismatch");
    std::copy(values.begin(), values.end(), real_);
    fftw_execute(static_cast<fftw_plan>(forward_));
    const double scale = 1.0 / static_cast<double>(points());
    for (std::size_t i = 0; i < nspec; ++i) out[i] = spec_[i] * scale;
}

// ---------------------------------------------------------------------------

SpectralField leray_project(const SpectralField& field) {
    SpectralField out = field;
    auto ux = out.component(0), uy = out.component(1), uz = out.component(2);
    field.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 == 0.0) return;
        const Complex kdotu = double(kx) * ux[i] + double(ky) * uy[i] + double(kz) * uz[i];
        const Complex s = kdotu / k2;
        ux[i] -= double(kx) * s;
        uy[i] -= double(ky) * s;
        uz[i] -= double(kz) * s;
    });
    return out;
}

SpectralField init_taylor_green(int N, double nu, double amplitude) {
    // sin x cos y cos z = sum over sx, sy, sz = +-1 of sx / (8i) e^{i(sx x + sy y + sz z)};
    // only the kz = +1 plane is stored, kz = -1 being its conjugate partner.
    SpectralField f(N, nu);
    auto ux = f.component(0), uy = f.component(1);
    const Complex c{0.0, -0.125 * amplitude};  // amplitude / (8i)
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) {
            const std::size_t idx = f.index(sx < 0 ? N - 1 : 1, sy < 0 ? N - 1 : 1, 1);
            ux[idx] = double(sx) * c;
            uy[idx] = -double(sy) * c;
        }
    return f;
}

SpectralField init_random(int N, double nu, std::uint64_t seed, int kmax) {
    SpectralField f(N, nu);
    Transform fft(N);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // draw in physical space from a band-limited random sum so reality holds exactly
    std::vector<double> values(fft.points());
    for (int c = 0; c < 3; ++c) {
        auto comp = f.component(c);
        f.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
            const int m = std::max({std::abs(kx), std::abs(ky), kz});
            if (m == 0 || m > kmax || !f.retained(kx, ky, kz)) return;
            const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            comp[i] = Complex{gauss(rng), gauss(rng)} / k2;
        });
        fft.to_physical(comp, values);
        fft.to_spectral(values, comp);
    }
    return leray_project(f);
}

SpectralField vorticity(const SpectralField& field) {
    SpectralField w(field.N(), field.nu());
    auto ux = field.component(0), uy = field.component(1), uz = field.component(2);
    auto wx = w.component(0), wy = w.component(1), wz = w.component(2);
    const Complex I{0.0, 1.0};
    field.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
        wx[i] = I * (double(ky) * uz[i] - double(kz) * uy[i]);
        wy[i] = I * (double(kz) * ux[i] - double(kx) * uz[i]);
        wz[i] = I * (double(kx) * uy[i] - double(ky) * ux[i]);
    });
    return w;
}

SpectralField biot_savart(const SpectralField& omega) {
    SpectralField u(omega.N(), omega.nu());
    auto wx = omega.component(0), wy = omega.component(1), wz = omega.component(2);
    auto ux = u.component(0), uy = u.component(1), uz = u.component(2);
    const Complex I{0.0, 1.0};
    omega.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 == 0.0) return;
        ux[i] = I * (double(ky) * wz[i] - double(kz) * wy[i]) / k2;
        uy[i] = I * (double(kz) * wx[i] - double(kx) * wz[i]) / k2;
        uz[i] = I * (double(kx) * wy[i] - double(ky) * wx[i]) / k2;
    });
    return u;
}

double divergence_error(const SpectralField& field) {
    auto ux = field.component(0), uy = field.component(1), uz = field.component(2);
    double largest = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const auto& v : field.component(c)) largest = std::max(largest, std::abs(v));
    const double floor = std::max(1e-300, 1e-14 * largest);
    double worst = 0.0;
    field.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 == 0.0) return;
        const double mag = std::sqrt(std::norm(ux[i]) + std::norm(uy[i]) + std::norm(uz[i]));
        if (mag < floor) return;
        const Complex kdotu = double(kx) * ux[i] + double(ky) * uy[i] + double(kz) * uz[i];
        worst = std::max(worst, std::abs(kdotu) / (std::sqrt(k2) * mag));
    });
    return worst;
}

// ---------------------------------------------------------------------------

double l2_norm_squared(const SpectralField& field) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto comp = field.component(c);
        field.for_each_mode([&](std::size_t i, int, int, int kz) { sum += field.plane_weight(kz) * std::norm(comp[i]); });
    }
    return sum * kTwoPi * kTwoPi * kTwoPi;
}

double gradient_l2_norm_squared(const SpectralField& field) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto comp = field.component(c);
        field.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
            const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            sum += field.plane_weight(kz) * k2 * std::norm(comp[i]);
        });
    }
    return sum * kTwoPi * kTwoPi * kTwoPi;
}

double inner_product(const SpectralField& f, const SpectralField& u) {
    if (f.N() != u.N()) fail(ErrorCode::kGridMismatch, "fields on different grids");
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto a = f.component(c), b = u.component(c);
        f.for_each_mode([&](std::size_t i, int, int, int kz) {
            sum += f.plane_weight(kz) * (a[i] * std::conj(b[i])).real();
        });
    }
    return sum * kTwoPi * kTwoPi * kTwoPi;
}

std::vector<double> derivative_magnitude(const SpectralField& field, int k, Transform& fft) {
    if (k < 0 || k > 2) fail(ErrorCode::kOutOfRange, "derivative order must be 0, 1 or 2");
    if (fft.N() != field.N()) fail(ErrorCode::kGridMismatch, "transform and field sizes differ");
    std::vector<double> sq(fft.points(), 0.0);
    std::vector<double> phys(fft.points());
    std::vector<Complex> work(field.modes());

    auto accumulate = [&](double weight) {
        fft.to_physical(work, phys);
        for (std::size_t p = 0; p < sq.size(); ++p) sq[p] += weight * phys[p] * phys[p];
    };
    auto axis_k = [](int a, int kx, int ky, int kz) { return a == 0 ? kx : (a == 1 ? ky : kz); };

    for (int c = 0; c < 3; ++c) {
        auto comp = field.component(c);
        if (k == 0) {
            std::copy(comp.begin(), comp.end(), work.begin());
            accumulate(1.0);
        } else if (k == 1) {
            for (int j = 0; j < 3; ++j) {
                field.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
                    work[i] = Complex{0.0, double(axis_k(j, kx, ky, kz))} * comp[i];
                });
                accumulate(1.0);
            }
        } else {
            for (int j = 0; j < 3; ++j)
                for (int l = j; l < 3; ++l) {
                    field.for_each_mode([&](std::size_t i, int kx, int ky, int kz) {
                        work[i] = -double(axis_k(j, kx, ky, kz)) * double(axis_k(l, kx, ky, kz)) * comp[i];
                    });
                    accumulate(j == l ? 1.0 : 2.0);
                }
        }
    }
    for (auto& v : sq) v = std::sqrt(v);
    return sq;
}

double lebesgue_norm_from_magnitude(std::span<const double> magnitude, double r) {
    if (magnitude.empty()) fail(ErrorCode::kInvalidArgument, "empty magnitude field");
    if (std::isinf(r)) return *std::max_element(magnitude.begin(), magnitude.end());
    if (!(r >= 1.0)) fail(ErrorCode::kOutOfRange, "r must be >= 1");
    double sum = 0.0;
    for (double m : magnitude) sum += r == 2.0 ? m * m : std::pow(m, r);
    const double mean = sum / static_cast<double>(magnitude.size());
    return std::pow(mean * kTwoPi * kTwoPi * kTwoPi, 1.0 / r);
}

double lebesgue_norm(const SpectralField& field, int k, double r, Transform& fft) {
    const auto mag = derivative_magnitude(field, k, fft);
    return lebesgue_norm_from_magnitude(mag, r);
}

GnPair gn_check(const SpectralField& field, Transform& fft) {
    const double l6 = lebesgue_norm(field, 0, 6.0, fft);
    return {l6 * l6, gradient_l2_norm_squared(field)};
}

}  // namespace navier_norms::spectral
