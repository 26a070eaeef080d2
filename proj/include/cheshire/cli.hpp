#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cheshire::cli {

enum ExitStatus : int {
    kOk = 0,
    kBadInput = 1,     // usage errors and scenario diagnostics
    kIoFailure = 2,
    kModelMismatch = 3, // `compare` found quantum and classical rows apart
};

/// Differences above this make `compare` exit with kModelMismatch.
inline constexpr double kCompareTolerance = 1e-9;

/// Runs one command line (without the program name). CSV and reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace cheshire::cli
