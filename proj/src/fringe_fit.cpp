#include "cheshire/interferometer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cheshire {

namespace {

constexpr std::size_t kMinSamples = 8;
constexpr double kGridTolerance = 1e-9;

void check_grid(std::span<const double> phi) {
    const std::size_t n = phi.size();
    if (n < kMinSamples) {
        throw std::invalid_argument("fringe fit needs at least 8 phase samples");
    }
    const double spacing = (phi[n - 1] - phi[0]) / static_cast<double>(n - 1);
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("fringe fit needs strictly increasing phases");
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((phi[k] - phi[k - 1]) - spacing) > kGridTolerance * std::max(1.0, spacing)) {
            throw std::invalid_argument("fringe fit needs uniformly spaced phases");
        }
    }
    if (spacing * static_cast<double>(n) < 2.0 * std::numbers::pi - kGridTolerance) {
        throw std::invalid_argument("fringe fit needs a sweep spanning a full 2 pi period");
    }
}

} // namespace

FringeFit fit_fringe(std::span<const double> phi, std::span<const double> signal) {
    if (phi.size() != signal.size()) {
        throw std::invalid_argument("fringe fit: phase and signal lengths differ");
    }
    check_grid(phi);

    const auto n = static_cast<Eigen::Index>(phi.size());
    Eigen::MatrixX3d design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        design(k, 0) = 1.0;
        design(k, 1) = std::cos(phi[k]);
        design(k, 2) = std::sin(phi[k]);
        y(k) = signal[k];
    }
    const Eigen::Vector3d coeff = design.colPivHouseholderQr().solve(y);

    FringeFit fit;
    fit.dc = coeff(0);
    fit.amplitude = std::hypot(coeff(1), coeff(2));
    fit.phase_offset = std::atan2(coeff(2), coeff(1));
    if (fit.phase_offset <= -std::numbers::pi) {
        fit.phase_offset = std::numbers::pi;
    }
    fit.max_residual = (design * coeff - y).cwiseAbs().maxCoeff();
    return fit;
}

FringeFit fringe_decompose(const SweepResult &sweep) {
    std::vector<double> phi;
    std::vector<double> signal;
    phi.reserve(sweep.rows.size());
    signal.reserve(sweep.rows.size());
    for (const auto &row : sweep.rows) {
        phi.push_back(row.phi);
        signal.push_back(row.d1_postselected);
    }
    return fit_fringe(phi, signal);
}

} // namespace cheshire
