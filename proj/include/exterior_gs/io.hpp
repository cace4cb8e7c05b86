#pragma once

#include <string>

namespace exgs {

// 17-significant-digit decimal form with '.' separator; byte-stable across
// runs so CSV outputs diff cleanly.
std::string fmt17(double x);

// Compact numeric token for file names (trailing zeros trimmed).
std::string num_token(double x);

// FNV-1a over a canonical key string; used by the curve cache.
std::string fnv1a_hex(const std::string& key);

} // namespace exgs
