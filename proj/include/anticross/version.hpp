#pragma once

namespace anticross {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace anticross
