#pragma once

#include <string>

namespace selfforce::io {

// Shortest round-trip decimal text for v (std::to_chars), with zeros
// canonicalized so -0.0 prints as "0".  Non-finite values print as
// "nan"/"inf"/"-inf".  Locale-independent and byte-stable across runs.
std::string format_double(double v);

}  // namespace selfforce::io
