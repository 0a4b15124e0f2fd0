#pragma once

namespace snnbp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace snnbp
