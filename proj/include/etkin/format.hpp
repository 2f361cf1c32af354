#pragma once

#include <string>

namespace etkin {

// Shortest decimal string that parses back to exactly the same double
// (std::to_chars general format). Integral values print without a trailing
// ".0", e.g. 25.0 -> "25".
std::string format_shortest(double v);

// Fixed 17-significant-digit form ("%.17g"), enough to round-trip any double.
std::string format_sig17(double v);

}  // namespace etkin
