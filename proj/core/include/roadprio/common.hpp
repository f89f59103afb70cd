#pragma once

#include <stdexcept>
#include <string>

namespace roadprio {

/// Bad input: malformed corpus files, schema violations, out-of-range
/// parameters. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal numeric failure (non-finite values, failed decomposition).
/// CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal representation that round-trips the exact double.
/// Used by every CSV writer so artifacts are byte-stable across runs.
std::string format_double(double value);

} // namespace roadprio
