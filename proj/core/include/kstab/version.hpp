#pragma once

namespace kstab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace kstab
