#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zzlab {

/// Shortest representation that parses back to the same double; "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

/// One CSV row from already formatted fields.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace zzlab
