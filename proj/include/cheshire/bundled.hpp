#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace cheshire {

struct BundledScenario {
    std::string_view name;
    std::string_view text;
    bool figure_panel; // one of the eight position/polarization panels
};

/// Scenarios compiled in from the scenarios/ directory, sorted by name.
std::span<const BundledScenario> bundled_scenarios();

std::optional<std::string_view> find_bundled(std::string_view name);

} // namespace cheshire
