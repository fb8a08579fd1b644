#include "selfforce/format.hpp"

#include <charconv>
#include <cmath>

namespace selfforce::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  (void)ec;
  return std::string(buffer, end);
}

}  // namespace selfforce::io
