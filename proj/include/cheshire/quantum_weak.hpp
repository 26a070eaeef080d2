/**
 * Pre/post-selected single photons on polarization (x) path space.
 *
 * Basis order is fixed as (H(x)L, H(x)R, V(x)L, V(x)R): index = 2 * pol + path,
 * polarization being the outer (slow) factor. Operators are always assembled
 * from explicit Kronecker products of a polarization factor and a path factor.
 */

#pragma once

#include "cheshire/interferometer.hpp"
#include "cheshire/jones.hpp"

#include <array>
#include <stdexcept>

namespace cheshire {

enum class Path { L, R };

struct ProductState {
    std::array<Complex, 4> amp{};

    static constexpr std::size_t index(Axis pol, Path path) {
        return 2 * static_cast<std::size_t>(pol) + static_cast<std::size_t>(path);
    }

    Complex operator()(Axis pol, Path path) const { return amp[index(pol, path)]; }

    double norm2() const;

    friend bool operator==(const ProductState &, const ProductState &) = default;
};

/// <a|b>, antilinear in a.
Complex inner(const ProductState &a, const ProductState &b);

/// Row-major 4x4 operator on ProductState.
struct ProductOperator {
    std::array<Complex, 16> m{};

    static ProductOperator identity();

    Complex operator()(std::size_t row, std::size_t col) const { return m[4 * row + col]; }
    Complex &operator()(std::size_t row, std::size_t col) { return m[4 * row + col]; }

    friend ProductOperator operator+(const ProductOperator &a, const ProductOperator &b);
    friend ProductOperator operator*(Complex s, const ProductOperator &a);
    friend ProductOperator operator*(const ProductOperator &a, const ProductOperator &b);
    friend ProductState operator*(const ProductOperator &a, const ProductState &psi);
};

/// 2x2 operator on the path factor, rows/cols ordered (L, R).
struct PathOperator {
    std::array<Complex, 4> m{};
};

PathOperator path_projector(Path path);

/// pol (x) path, in the fixed basis order.
ProductOperator kron(const JonesMatrix &pol, const PathOperator &path);

/// H/V flip.
JonesMatrix sigma_x();

/// Identity on polarization, projector onto one path.
ProductOperator path_projector_op(Path path);

/// sigma_x confined to one path.
ProductOperator polarization_flip_op(Path path);

/// (|H>|L> + |V>|R>) / sqrt(2)
ProductState preselected();

/// |axis> (|L> + |R>) / sqrt(2); the default is the H polarizer of detector 1.
ProductState postselected(Axis axis = Axis::H);

/// Thrown when |<post|pre>| is too small for a weak value to exist.
class DegeneratePostselection : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kMinOverlap = 1e-12;

/// <post|A|pre> / <post|pre>
Complex weak_value(const ProductOperator &a, const ProductState &pre, const ProductState &post);

/// Single-photon in-arm evolution Pi_L (x) (elements_L * phase) + Pi_R (x) elements_R.
/// Attenuators enter at amplitude level, so the operator is norm-nonincreasing.
ProductOperator arm_evolution(const ArmConfig &left, const ArmConfig &right, double phase);

/// |<post|M|pre>|^2 normalized so the empty interferometer gives 1.
double postselected_probability(const ArmConfig &left, const ArmConfig &right, double phase,
                                Axis postselect = Axis::H);

/// The four Cheshire-cat weak values for the standard pre/post-selection.
struct CheshireWeakValues {
    Complex path_left;
    Complex path_right;
    Complex flip_left;
    Complex flip_right;
};

CheshireWeakValues cheshire_weak_values();

/// Finite-difference response coefficients of the post-selected signal:
///   absorb_X = (1 - P(T_X = 1 - epsilon)) / epsilon
///   rotate_X = fringe amplitude with hwp(theta) in arm X, divided by 2 theta
/// They tend to Re<Pi_L>_w, Re<Pi_R>_w, |<sigma Pi_L>_w|, |<sigma Pi_R>_w|.
struct WeakResponse {
    double absorb_left = 0.0;
    double absorb_right = 0.0;
    double rotate_left = 0.0;
    double rotate_right = 0.0;
};

/// Requires 0 < epsilon <= 0.1 and 0 < theta <= 0.1, else std::invalid_argument.
WeakResponse weak_response_check(double epsilon, double theta);

} // namespace cheshire
