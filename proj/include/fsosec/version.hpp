#pragma once

namespace fsosec {

inline constexpr const char* version = "0.1.0";

}  // namespace fsosec
