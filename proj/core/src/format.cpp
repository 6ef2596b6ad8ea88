#include "noisyfb/format.hpp"

#include <array>
#include <charconv>

namespace noisyfb {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

}  // namespace noisyfb
