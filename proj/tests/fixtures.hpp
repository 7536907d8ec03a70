#pragma once

// Worked-example instances. Real-valued epsilons are scaled to integers.

#include "symef1/core.hpp"

namespace symef1::fixtures {

inline Instance binary_no_symef1()
{
    return Instance{{1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}};
}

inline Instance clique5()
{
    return Instance{{1, 2, 3, 4, 5, 6}, {1, 2, 4, 3, 5, 6}, {1, 2, 4, 5, 3, 6}};
}

/// epsilon = 0
inline Instance mnw_unfair()
{
    return Instance{{1, 2, 3, 4, 5, 6}, {3, 1, 3, 1, 3, 1}};
}

/// epsilon = 1/100, both rows scaled by 100
inline Instance mnw_unfair_scaled()
{
    return Instance{{100, 200, 300, 400, 500, 600}, {300, 101, 300, 100, 300, 102}};
}

inline Instance greedy_stuck()
{
    return Instance{{40, 40, 40, 36, 33, 33, 33, 33, 32}, {33, 33, 33, 33, 36, 40, 40, 40, 32}};
}

/// epsilon = 1/100, scaled by 100
inline Instance unique_partition()
{
    return Instance{{100, 50, 51}, {100, 51, 50}};
}

/// diagonal 1, off-diagonal epsilon = 1/100, scaled by 100
inline Instance no_symefx_diagonal()
{
    return Instance{{100, 1, 1, 1}, {1, 100, 1, 1}, {1, 1, 100, 1}};
}

inline Instance identical_3x9()
{
    return Instance{{9, 8, 7, 6, 5, 4, 3, 2, 1}, {9, 8, 7, 6, 5, 4, 3, 2, 1}, {9, 8, 7, 6, 5, 4, 3, 2, 1}};
}

} // namespace symef1::fixtures
