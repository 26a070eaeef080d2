#include "cheshire/jones.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cheshire {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite_angle(double angle, const char *what) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument(std::string(what) + ": angle must be finite");
    }
}

} // namespace

double JonesMatrix::operator_norm() const {
    // The closed form sqrt((F + sqrt(F^2 - 4|det|^2)) / 2) loses half the digits
    // when the singular values coincide, as they do for every unitary element.
    Eigen::Matrix2cd m;
    m << hh, hv, vh, vv;
    return Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues()(0);
}

bool JonesMatrix::is_finite() const {
    return finite(hh) && finite(hv) && finite(vh) && finite(vv);
}

PolarizationAmplitude apply(const JonesMatrix &m, const PolarizationAmplitude &a) {
    return {m.hh * a.h + m.hv * a.v, m.vh * a.h + m.vv * a.v};
}

JonesMatrix attenuator(double transmission) {
    // The negated comparison also rejects NaN.
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
        throw std::invalid_argument("attenuator: transmission " + std::to_string(transmission) +
                                    " outside [0, 1]");
    }
    const double s = std::sqrt(transmission);
    return {s, 0.0, 0.0, s};
}

JonesMatrix hwp(double theta_eff) {
    require_finite_angle(theta_eff, "hwp");
    const double c = std::cos(theta_eff);
    const double s = std::sin(theta_eff);
    return {c, s, s, -c};
}

JonesMatrix phase_shift(double phi) {
    require_finite_angle(phi, "phase_shift");
    const Complex p = std::polar(1.0, phi);
    return {p, 0.0, 0.0, p};
}

JonesMatrix linear_polarizer(Axis axis) {
    if (axis == Axis::H) {
        return {1.0, 0.0, 0.0, 0.0};
    }
    return {0.0, 0.0, 0.0, 1.0};
}

} // namespace cheshire
