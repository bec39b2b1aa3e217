#pragma once

namespace vvl {
inline constexpr const char* kVersion = "vvl 0.1.0";
}
