#pragma once

namespace pbursts {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pbursts
