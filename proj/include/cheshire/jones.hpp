/**
 * Jones calculus for fully polarized light in the (H, V) linear basis.
 *
 * Amplitudes are complex phasors: a real field E0 cos(wt + phi) is carried as
 * E0 exp(i phi). Time-averaged intensity is proportional to |phasor|^2, and
 * every intensity the simulator reports is a ratio, so the constant drops out.
 *
 * Element matrices are passive: |det| <= 1 and operator norm <= 1.
 */

#pragma once

#include <complex>

namespace cheshire {

using Complex = std::complex<double>;

enum class Axis { H, V };

/// Field (or single-photon) polarization amplitude in one arm.
struct PolarizationAmplitude {
    Complex h{};
    Complex v{};

    constexpr PolarizationAmplitude() = default;
    constexpr PolarizationAmplitude(Complex h_, Complex v_) : h(h_), v(v_) {}

    static constexpr PolarizationAmplitude horizontal() { return {1.0, 0.0}; }
    static constexpr PolarizationAmplitude vertical() { return {0.0, 1.0}; }

    /// |h|^2 + |v|^2
    double norm2() const { return std::norm(h) + std::norm(v); }

    friend PolarizationAmplitude operator+(const PolarizationAmplitude &a,
                                           const PolarizationAmplitude &b) {
        return {a.h + b.h, a.v + b.v};
    }
    friend PolarizationAmplitude operator-(const PolarizationAmplitude &a,
                                           const PolarizationAmplitude &b) {
        return {a.h - b.h, a.v - b.v};
    }
    friend PolarizationAmplitude operator*(Complex s, const PolarizationAmplitude &a) {
        return {s * a.h, s * a.v};
    }

    friend bool operator==(const PolarizationAmplitude &, const PolarizationAmplitude &) = default;
};

/// 2x2 complex matrix acting on PolarizationAmplitude.
/// Rows are output components, columns input components: m_hv couples v in to h out.
struct JonesMatrix {
    Complex hh{1.0};
    Complex hv{};
    Complex vh{};
    Complex vv{1.0};

    static constexpr JonesMatrix identity() { return {}; }
    static constexpr JonesMatrix zero() { return {0.0, 0.0, 0.0, 0.0}; }

    Complex det() const { return hh * vv - hv * vh; }

    /// Largest singular value.
    double operator_norm() const;

    bool is_finite() const;

    /// Composition: (a * b) applies b first, then a.
    friend JonesMatrix operator*(const JonesMatrix &a, const JonesMatrix &b) {
        return {a.hh * b.hh + a.hv * b.vh, a.hh * b.hv + a.hv * b.vv,
                a.vh * b.hh + a.vv * b.vh, a.vh * b.hv + a.vv * b.vv};
    }
    friend JonesMatrix operator*(Complex s, const JonesMatrix &m) {
        return {s * m.hh, s * m.hv, s * m.vh, s * m.vv};
    }
    friend JonesMatrix operator+(const JonesMatrix &a, const JonesMatrix &b) {
        return {a.hh + b.hh, a.hv + b.hv, a.vh + b.vh, a.vv + b.vv};
    }

    friend bool operator==(const JonesMatrix &, const JonesMatrix &) = default;
};

PolarizationAmplitude apply(const JonesMatrix &m, const PolarizationAmplitude &a);

/// Polarization-independent absorber; amplitude scales by sqrt(T).
/// Throws std::invalid_argument unless 0 <= T <= 1.
JonesMatrix attenuator(double transmission);

/// Half-wave plate with fast axis at theta_eff / 2 from H:
///   [[cos t,  sin t],
///    [sin t, -cos t]]
/// so H goes to cos t H + sin t V and V goes to sin t H - cos t V.
JonesMatrix hwp(double theta_eff);

/// exp(i phi) times identity.
JonesMatrix phase_shift(double phi);

/// Projector onto one linear axis.
JonesMatrix linear_polarizer(Axis axis);

} // namespace cheshire
