#pragma once

namespace qpdec {

inline constexpr const char* version = "0.1.0";

}
