#pragma once

#include "cheshire/interferometer.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace cheshire {

// Header `phi,d1_postselected,d1_total,d2_total[,quantum_d1]`, one row per
// phase, `%.17g` values, '\n' line endings.

/// Throws std::ios_base::failure if the sink reports an error.
void write_csv(const SweepResult &result, std::ostream &sink);

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inverse of write_csv. Throws CsvError on a schema mismatch.
SweepResult read_csv(std::istream &source);

} // namespace cheshire
