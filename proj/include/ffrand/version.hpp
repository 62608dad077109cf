#pragma once

namespace ffrand {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ffrand
