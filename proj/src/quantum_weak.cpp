#include "cheshire/quantum_weak.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace cheshire {

namespace {

constexpr std::size_t kResponseSweepSteps = 128;

} // namespace

double ProductState::norm2() const {
    double total = 0.0;
    for (const auto &a : amp) {
        total += std::norm(a);
    }
    return total;
}

Complex inner(const ProductState &a, const ProductState &b) {
    Complex total{};
    for (std::size_t k = 0; k < 4; ++k) {
        total += std::conj(a.amp[k]) * b.amp[k];
    }
    return total;
}

ProductOperator ProductOperator::identity() {
    ProductOperator id;
    for (std::size_t k = 0; k < 4; ++k) {
        id(k, k) = 1.0;
    }
    return id;
}

ProductOperator operator+(const ProductOperator &a, const ProductOperator &b) {
    ProductOperator out;
    for (std::size_t k = 0; k < 16; ++k) {
        out.m[k] = a.m[k] + b.m[k];
    }
    return out;
}

ProductOperator operator*(Complex s, const ProductOperator &a) {
    ProductOperator out;
    for (std::size_t k = 0; k < 16; ++k) {
        out.m[k] = s * a.m[k];
    }
    return out;
}

ProductOperator operator*(const ProductOperator &a, const ProductOperator &b) {
    ProductOperator out;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < 4; ++k) {
                acc += a(i, k) * b(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

ProductState operator*(const ProductOperator &a, const ProductState &psi) {
    ProductState out;
    for (std::size_t i = 0; i < 4; ++i) {
        Complex acc{};
        for (std::size_t k = 0; k < 4; ++k) {
            acc += a(i, k) * psi.amp[k];
        }
        out.amp[i] = acc;
    }
    return out;
}

PathOperator path_projector(Path path) {
    PathOperator p;
    const std::size_t k = static_cast<std::size_t>(path);
    p.m[2 * k + k] = 1.0;
    return p;
}

ProductOperator kron(const JonesMatrix &pol, const PathOperator &path) {
    const std::array<Complex, 4> pm{pol.hh, pol.hv, pol.vh, pol.vv};
    ProductOperator out;
    for (std::size_t pi = 0; pi < 2; ++pi) {
        for (std::size_t pj = 0; pj < 2; ++pj) {
            for (std::size_t qi = 0; qi < 2; ++qi) {
                for (std::size_t qj = 0; qj < 2; ++qj) {
                    out(2 * pi + qi, 2 * pj + qj) = pm[2 * pi + pj] * path.m[2 * qi + qj];
                }
            }
        }
    }
    return out;
}

JonesMatrix sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }

ProductOperator path_projector_op(Path path) {
    return kron(JonesMatrix::identity(), path_projector(path));
}

ProductOperator polarization_flip_op(Path path) { return kron(sigma_x(), path_projector(path)); }

ProductState preselected() {
    const double r = 1.0 / std::numbers::sqrt2;
    ProductState s;
    s.amp[ProductState::index(Axis::H, Path::L)] = r;
    s.amp[ProductState::index(Axis::V, Path::R)] = r;
    return s;
}

ProductState postselected(Axis axis) {
    const double r = 1.0 / std::numbers::sqrt2;
    ProductState s;
    s.amp[ProductState::index(axis, Path::L)] = r;
    s.amp[ProductState::index(axis, Path::R)] = r;
    return s;
}

Complex weak_value(const ProductOperator &a, const ProductState &pre, const ProductState &post) {
    const Complex overlap = inner(post, pre);
    if (!(std::abs(overlap) > kMinOverlap)) {
        throw DegeneratePostselection("weak value undefined: |<post|pre>| = " +
                                      std::to_string(std::abs(overlap)));
    }
    return inner(post, a * pre) / overlap;
}

ProductOperator arm_evolution(const ArmConfig &left, const ArmConfig &right, double phase) {
    const JonesMatrix in_left = left.transfer() * phase_shift(phase);
    const JonesMatrix in_right = right.transfer();
    return kron(in_left, path_projector(Path::L)) + kron(in_right, path_projector(Path::R));
}

double postselected_probability(const ArmConfig &left, const ArmConfig &right, double phase,
                                Axis postselect) {
    const ProductState pre = preselected();
    const ProductState post = postselected(postselect);
    // |<post|pre>|^2 = 1/4 for either axis: the empty-interferometer level.
    static const double reference = std::norm(inner(postselected(Axis::H), preselected()));
    const Complex amplitude = inner(post, arm_evolution(left, right, phase) * pre);
    return std::norm(amplitude) / reference;
}

CheshireWeakValues cheshire_weak_values() {
    const ProductState pre = preselected();
    const ProductState post = postselected();
    return {weak_value(path_projector_op(Path::L), pre, post),
            weak_value(path_projector_op(Path::R), pre, post),
            weak_value(polarization_flip_op(Path::L), pre, post),
            weak_value(polarization_flip_op(Path::R), pre, post)};
}

WeakResponse weak_response_check(double epsilon, double theta) {
    if (!(epsilon > 0.0 && epsilon <= 0.1)) {
        throw std::invalid_argument("weak_response_check: epsilon must lie in (0, 0.1]");
    }
    if (!(theta > 0.0 && theta <= 0.1)) {
        throw std::invalid_argument("weak_response_check: theta must lie in (0, 0.1]");
    }

    const ArmConfig empty;
    const ArmConfig absorber{{Attenuate{1.0 - epsilon}}};
    const ArmConfig rotator{{Hwp{theta}}};

    auto fringe_amplitude = [](const ArmConfig &left, const ArmConfig &right) {
        std::vector<double> phi(kResponseSweepSteps);
        std::vector<double> signal(kResponseSweepSteps);
        for (std::size_t k = 0; k < kResponseSweepSteps; ++k) {
            phi[k] = 2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(kResponseSweepSteps);
            signal[k] = postselected_probability(left, right, phi[k]);
        }
        return fit_fringe(phi, signal).amplitude;
    };

    WeakResponse r;
    r.absorb_left = (1.0 - postselected_probability(absorber, empty, 0.0)) / epsilon;
    r.absorb_right = (1.0 - postselected_probability(empty, absorber, 0.0)) / epsilon;
    r.rotate_left = fringe_amplitude(rotator, empty) / (2.0 * theta);
    r.rotate_right = fringe_amplitude(empty, rotator) / (2.0 * theta);
    return r;
}

} // namespace cheshire
