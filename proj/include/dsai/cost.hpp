#pragma once

#include <limits>

namespace dsai {

/// Distinguished infinite cost; arithmetic on costs saturates at this value.
inline constexpr int kInfCost = std::numeric_limits<int>::max() / 4;

inline int sat_add(int a, int b) {
    return (a >= kInfCost || b >= kInfCost) ? kInfCost : a + b;
}

} // namespace dsai
