#pragma once

namespace lpflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lpflow
