/**
 * Classical two-arm polarization interferometer.
 *
 * A polarizing splitter prepares H in arm L and V in arm R. Each arm carries an
 * ordered list of elements; arm L also carries the scanned phase. The arms are
 * recombined on a lossless non-polarizing beamsplitter,
 *
 *     out1 = (A_L + A_R) / sqrt(2),   out2 = (A_L - A_R) / sqrt(2),
 *
 * applied per polarization component. Detector 1 sits behind a linear
 * polarizer (H by default); detector 2 has none.
 *
 * All intensities are normalized to the post-selected detector-1 level of the
 * empty, ideal interferometer, which is phase independent. On that scale the
 * total injected power is kInjectedPower and constructive fringes can reach 4.
 */

#pragma once

#include "cheshire/jones.hpp"

#include <span>
#include <variant>
#include <vector>

namespace cheshire {

struct Attenuate {
    double transmission = 1.0;
    friend bool operator==(const Attenuate &, const Attenuate &) = default;
};

struct Hwp {
    double theta_eff = 0.0; // radians, twice the fast-axis angle
    friend bool operator==(const Hwp &, const Hwp &) = default;
};

struct PhaseShift {
    double phi = 0.0; // radians
    friend bool operator==(const PhaseShift &, const PhaseShift &) = default;
};

using OpticalElement = std::variant<Attenuate, Hwp, PhaseShift>;

/// Throws std::invalid_argument for out-of-range parameters.
JonesMatrix jones_of(const OpticalElement &element);

/// Elements in beam order.
struct ArmConfig {
    std::vector<OpticalElement> elements;

    /// Product of element matrices, first element applied first.
    JonesMatrix transfer() const;

    friend bool operator==(const ArmConfig &, const ArmConfig &) = default;
};

struct Imperfections {
    double visibility = 1.0;          // scales the L-R cross terms, [0, 1]
    double arm_power_imbalance = 0.0; // x in [-1, 1]; weights sqrt((1+x)/2), sqrt((1-x)/2)
    double preselect_leak_angle = 0.0; // radians

    static constexpr Imperfections ideal() { return {}; }

    /// Throws std::invalid_argument when a parameter is out of range.
    void validate() const;

    friend bool operator==(const Imperfections &, const Imperfections &) = default;
};

struct InterferometerSetup {
    ArmConfig left;
    ArmConfig right;
    double phase = 0.0;
    Imperfections imperfections{};
    Axis postselect = Axis::H;
};

struct DetectorReadout {
    double d1_postselected = 0.0;
    double d1_total = 0.0;
    double d2_total = 0.0;
};

/// Injected power on the normalized scale used by DetectorReadout.
inline constexpr double kInjectedPower = 4.0;

DetectorReadout propagate(const InterferometerSetup &setup);

/// T_L cos^2(theta_L) + T_R sin^2(theta_R) + 2 cos(phi) sqrt(T_L T_R) cos(theta_L) sin(theta_R).
/// Throws std::invalid_argument unless both transmissions lie in [0, 1].
double closed_form_intensity(double t_left, double t_right, double theta_left,
                             double theta_right, double phi);

struct SweepRow {
    double phi = 0.0;
    double d1_postselected = 0.0;
    double d1_total = 0.0;
    double d2_total = 0.0;
    double quantum_d1 = 0.0; // meaningful only when SweepResult::has_quantum

    friend bool operator==(const SweepRow &, const SweepRow &) = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool has_quantum = false;

    friend bool operator==(const SweepResult &, const SweepResult &) = default;
};

/// signal(phi) ~ dc + amplitude * cos(phi - phase_offset)
struct FringeFit {
    double dc = 0.0;
    double amplitude = 0.0;    // >= 0
    double phase_offset = 0.0; // radians, in (-pi, pi]
    double max_residual = 0.0; // largest |data - fit| over the samples
};

/// Least-squares single-cosine fit. The samples must be uniformly spaced, at
/// least 8 of them, covering a full 2 pi period (n * spacing >= 2 pi).
/// Throws std::invalid_argument otherwise.
FringeFit fit_fringe(std::span<const double> phi, std::span<const double> signal);

/// fit_fringe over the d1_postselected column.
FringeFit fringe_decompose(const SweepResult &sweep);

} // namespace cheshire
