#include <cmath>
#include <string>

#include "navier_norms/errors.hpp"
#include "navier_norms/inequality_kit.hpp"

namespace navier_norms::inequality {

GridFunction riesz_convolution(const GridFunction& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::kAlphaOutOfRange, "riesz_convolution: alpha must lie in (0, 1)");
    const std::size_t n = f.size();
    const double h = f.cell_width();
    const double e = 1.0 - alpha;
    // Integral of |u|^{-alpha} over a cell whose offset from the midpoint is (m - 1/2)h .. (m + 1/2)h.
    // Depends only on m = |i - c|, so tabulate once.
    std::vector<double> w(n);
    const double scale = std::pow(h, e) / e;
    w[0] = 2.0 * scale * std::pow(0.5, e);
    for (std::size_t m = 1; m < n; ++m) {
        const double md = static_cast<double>(m);
        w[m] = scale * (std::pow(md + 0.5, e) - std::pow(md - 0.5, e));
    }
    std::vector<double> g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) acc += f[c] * w[i > c ? i - c : c - i];
        g[i] = acc;
    }
    return GridFunction(f.T(), std::move(g));
}

SingularBetaIntegral singular_beta_integral(double s, double T, double theta, double beta) {
    if (!(theta < 1.0) || !(beta < 1.0)) {
        fail(ErrorCode::kNonIntegrable, "singular_beta_integral: theta = " + std::to_string(theta) +
                                            ", beta = " + std::to_string(beta) + " (both must be < 1)");
    }
    if (!(s >= 0.0 && s < T)) fail(ErrorCode::kOutOfRange, "singular_beta_integral: requires 0 <= s < T");
    const double length = T - s;
    const double e = 1.0 - theta - beta;
    SingularBetaIntegral out;
    // t = s + L x turns the integral into L^{1-theta-beta} B(1-beta, 1-theta).
    out.value = std::pow(length, e) * std::beta(1.0 - beta, 1.0 - theta);
    out.constant = 1.0 / (1.0 - theta) + 1.0 / (1.0 - beta);
    out.bound = out.constant * std::pow(0.5 * length, e);
    return out;
}

}  // namespace navier_norms::inequality
