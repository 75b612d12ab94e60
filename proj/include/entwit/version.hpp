#pragma once

namespace entwit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace entwit
