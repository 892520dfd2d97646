#pragma once

namespace qpartial {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qpartial
