#pragma once

namespace noisyfb::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace noisyfb::detail
