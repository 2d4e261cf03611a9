#pragma once

namespace banditlab {

inline constexpr const char* kVersion = "banditlab 0.1.0";

}  // namespace banditlab
