#pragma once

namespace ringwalk {

inline constexpr const char* kVersion = "1.0.0";

}
