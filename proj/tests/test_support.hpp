#pragma once

#include "cheshire/jones.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

namespace cheshire::testing {

// Seeded generators for the property tests; fixed seeds keep failures reproducible.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

    PolarizationAmplitude amplitude() { return {complex(), complex()}; }

    JonesMatrix matrix() { return {complex(), complex(), complex(), complex()}; }

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline ::testing::AssertionResult near(Complex a, Complex b, double tol) {
    if (std::abs(a - b) <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << a << " vs " << b << " differ by " << std::abs(a - b)
                                         << " > " << tol;
}

inline ::testing::AssertionResult near(const PolarizationAmplitude &a,
                                       const PolarizationAmplitude &b, double tol) {
    if (std::abs(a.h - b.h) <= tol && std::abs(a.v - b.v) <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << "(" << a.h << ", " << a.v << ") vs (" << b.h << ", "
                                         << b.v << ")";
}

inline ::testing::AssertionResult near(const JonesMatrix &a, const JonesMatrix &b, double tol) {
    const double d = std::max({std::abs(a.hh - b.hh), std::abs(a.hv - b.hv),
                               std::abs(a.vh - b.vh), std::abs(a.vv - b.vv)});
    if (d <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << "matrices differ by " << d;
}

} // namespace cheshire::testing
