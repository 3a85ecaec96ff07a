// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace sievelab {

inline constexpr const char* tool_version = "sievelab 1.0.0";

}  // namespace sievelab
