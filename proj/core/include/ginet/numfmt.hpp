#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ginet {

// Pinned output formatting: at most 6 significant digits, trailing zeros
// dropped, exponent form outside [1e-4, 1e6) (printf "%.6g" semantics).
// Negative zero prints as "0"; NaN prints as "NA".
std::string format_number(double v);

// Strict decimal parse with optional exponent. Accepts "nan"/"NaN" (returns
// NaN) and "inf". Empty or partially numeric text returns nullopt.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view s) noexcept;

}  // namespace ginet
