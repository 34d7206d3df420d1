#pragma once

namespace smoothpile {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smoothpile
