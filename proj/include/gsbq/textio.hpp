#pragma once

#include <string>

namespace gsbq {

/// Locale-independent shortest 17-significant-digit rendering; keeps CSV and
/// JSON output byte-stable across runs.
std::string num17(double x);

}  // namespace gsbq
