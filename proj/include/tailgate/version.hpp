#pragma once

namespace tailgate {
inline constexpr const char* kVersion = "0.1.0";
}
