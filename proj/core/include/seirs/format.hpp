#pragma once

#include <string>

namespace seirs {

/// Shortest decimal string that parses back to exactly `x`.
/// Non-finite values print as "inf", "-inf" or "nan".
std::string format_number(double x);

} // namespace seirs
