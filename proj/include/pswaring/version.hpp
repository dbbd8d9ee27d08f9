#pragma once

namespace pswaring {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pswaring
