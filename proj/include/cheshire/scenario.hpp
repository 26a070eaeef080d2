/**
 * Text scenarios describing one experiment, and phase sweeps over them.
 *
 * Grammar (one directive per line, `#` starts a comment, keywords are
 * case-insensitive, angles are radians unless suffixed with `deg`):
 *
 *     arm L: attenuate <transmission>      # also `arm R:`
 *     arm L: hwp <angle>                   # effective rotation, 2x fast-axis angle
 *     arm L: phase <angle>
 *     imperfect: visibility <x>
 *     imperfect: imbalance <x>
 *     imperfect: leak <angle>
 *     sweep: <start> <end> <steps>
 *     postselect: H | V
 *     model: classical | quantum | both
 *
 * Arm directives append elements in file order; every other directive
 * overwrites the previous value.
 */

#pragma once

#include "cheshire/interferometer.hpp"

#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cheshire {

struct SweepGrid {
    double start = 0.0;
    double end = 2.0 * std::numbers::pi;
    std::size_t steps = 128;

    /// Sample k of the half-open grid [start, end).
    double phi(std::size_t k) const {
        return start + (end - start) * static_cast<double>(k) / static_cast<double>(steps);
    }

    friend bool operator==(const SweepGrid &, const SweepGrid &) = default;
};

inline constexpr std::size_t kMaxSweepSteps = 1'000'000;

struct ModelSet {
    bool classical = true;
    bool quantum = true;

    friend bool operator==(const ModelSet &, const ModelSet &) = default;
};

struct Scenario {
    ArmConfig left;
    ArmConfig right;
    Imperfections imperfections{};
    SweepGrid sweep{};
    Axis postselect = Axis::H;
    ModelSet models{};

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &message);

    std::size_t line() const { return line_; }
    const std::string &message() const { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

/// Throws ParseError for the first offending line.
Scenario parse_scenario(std::string_view text);

/// Parses `text`, then applies each `key=value` override as though it were
/// appended to the text with its first `=` replaced by `:`. Override i is
/// reported as line (number of text lines + i + 1).
Scenario parse_scenario(std::string_view text, std::span<const std::string> overrides);

/// Canonical text form; parse_scenario(print_scenario(s)) == s.
std::string print_scenario(const Scenario &s);

/// Evaluates the classical model (and the quantum model when enabled) at each
/// grid phase. The classical columns are always present.
SweepResult run_sweep(const Scenario &s);

} // namespace cheshire
