#include "cheshire/interferometer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cheshire {

namespace {

// Raw post-selected detector-1 intensity of the empty ideal interferometer
// with unit injected power: |(1/sqrt2) * (1/sqrt2)|^2.
constexpr double kEmptyReference = 0.25;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };

// One NPBS output port for one polarization component. The L-R cross term is
// weighted by the visibility; visibility = 1 reduces to |a +- b|^2 / 2 exactly.
double port_component(Complex left, Complex right, double sign, double visibility) {
    const double coherent = 0.5 * std::norm(left + sign * right);
    const double incoherent = 0.5 * (std::norm(left) + std::norm(right));
    return visibility * coherent + (1.0 - visibility) * incoherent;
}

} // namespace

JonesMatrix jones_of(const OpticalElement &element) {
    return std::visit(overloaded{
                          [](const Attenuate &a) { return attenuator(a.transmission); },
                          [](const Hwp &w) { return hwp(w.theta_eff); },
                          [](const PhaseShift &p) { return phase_shift(p.phi); },
                      },
                      element);
}

JonesMatrix ArmConfig::transfer() const {
    JonesMatrix total = JonesMatrix::identity();
    for (const auto &element : elements) {
        total = jones_of(element) * total;
    }
    return total;
}

void Imperfections::validate() const {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("visibility " + std::to_string(visibility) + " outside [0, 1]");
    }
    if (!(arm_power_imbalance >= -1.0 && arm_power_imbalance <= 1.0)) {
        throw std::invalid_argument("arm power imbalance " + std::to_string(arm_power_imbalance) +
                                    " outside [-1, 1]");
    }
    if (!std::isfinite(preselect_leak_angle)) {
        throw std::invalid_argument("preselection leak angle must be finite");
    }
}

DetectorReadout propagate(const InterferometerSetup &setup) {
    const Imperfections &imp = setup.imperfections;
    imp.validate();

    const double w_left = std::sqrt(0.5 * (1.0 + imp.arm_power_imbalance));
    const double w_right = std::sqrt(0.5 * (1.0 - imp.arm_power_imbalance));
    const double c = std::cos(imp.preselect_leak_angle);
    const double s = std::sin(imp.preselect_leak_angle);

    PolarizationAmplitude left{w_left * c, w_left * s};
    PolarizationAmplitude right{-w_right * s, w_right * c};

    left = apply(phase_shift(setup.phase), left);
    left = apply(setup.left.transfer(), left);
    right = apply(setup.right.transfer(), right);

    const double v = imp.visibility;
    const double d1_h = port_component(left.h, right.h, +1.0, v);
    const double d1_v = port_component(left.v, right.v, +1.0, v);
    const double d2_h = port_component(left.h, right.h, -1.0, v);
    const double d2_v = port_component(left.v, right.v, -1.0, v);

    const double scale = 1.0 / kEmptyReference;
    DetectorReadout out;
    out.d1_postselected = scale * (setup.postselect == Axis::H ? d1_h : d1_v);
    out.d1_total = scale * (d1_h + d1_v);
    out.d2_total = scale * (d2_h + d2_v);
    return out;
}

double closed_form_intensity(double t_left, double t_right, double theta_left,
                             double theta_right, double phi) {
    if (!(t_left >= 0.0 && t_left <= 1.0) || !(t_right >= 0.0 && t_right <= 1.0)) {
        throw std::invalid_argument("closed_form_intensity: transmissions must lie in [0, 1]");
    }
    const double cl = std::cos(theta_left);
    const double sr = std::sin(theta_right);
    return t_left * cl * cl + t_right * sr * sr +
           2.0 * std::cos(phi) * std::sqrt(t_left * t_right) * cl * sr;
}

} // namespace cheshire
