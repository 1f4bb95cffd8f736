#pragma once

namespace qwlab {

inline constexpr const char* version_string = "qwlab 0.1.0";

}
