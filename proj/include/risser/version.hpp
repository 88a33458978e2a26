// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links

#pragma once

namespace risser {

inline constexpr const char* kVersion = "0.1.0";

} // namespace risser
