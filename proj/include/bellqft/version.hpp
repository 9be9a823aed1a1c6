#pragma once

namespace bellqft {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bellqft
