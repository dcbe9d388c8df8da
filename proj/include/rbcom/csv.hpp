#pragma once

#include <iosfwd>
#include <string>

namespace rbcom {

// CSV cell formatting: '.' decimal separator, plain decimal inside
// [1e-3, 1e4), scientific outside, trailing zeros trimmed. Deterministic for
// identical inputs (golden-file friendly).
std::string format_number(double v);

} // namespace rbcom
