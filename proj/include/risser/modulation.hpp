// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links

#pragma once

#include <cmath>

#include "risser/errors.hpp"
#include "risser/numerics.hpp"

namespace risser::modulation {

inline void check_mpsk_order(int m) {
    if (m < 2 || (m & (m - 1)) != 0)
        throw DomainError("M-PSK order must be a power of two >= 2");
}

/// alpha_PSK = 2 sin^2(pi / M).
inline double alpha_psk(int m) {
    check_mpsk_order(m);
    const double s = std::sin(numerics::kPi / m);
    return 2.0 * s * s;
}

/// Upper limit (M-1) pi / M of the M-PSK SER integral.
inline double mpsk_upper_limit(int m) {
    check_mpsk_order(m);
    return (m - 1) * numerics::kPi / m;
}

} // namespace risser::modulation
