#pragma once

namespace movemine {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace movemine
