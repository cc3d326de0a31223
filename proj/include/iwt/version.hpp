#pragma once

namespace iwt {
inline constexpr const char* version = "0.1.0";
}
