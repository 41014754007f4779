#pragma once

namespace lup {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lup
