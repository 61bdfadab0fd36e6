#pragma once

// Worked-example delivery tables (K=8, z=2, t=1 and K=14, z=3, t=2).

#include <array>

namespace fixtures {

// n, j1, j2, subfile for group 1, subfile for group 2, user index in group 1, in group 2
struct RowA {
    int n, j1, j2, s1, s2, u1, u2;
};

inline constexpr std::array<RowA, 32> kExampleA = {{
    {1, 1, 1, 5, 2, 1, 4},
    {1, 1, 2, 6, 1, 1, 3},
    {1, 1, 3, 7, 1, 1, 2},
    {1, 1, 4, 8, 2, 1, 1},
    {1, 2, 1, 1, 6, 2, 4},
    {1, 2, 2, 2, 5, 2, 3},
    {1, 2, 3, 3, 5, 2, 2},
    {1, 2, 4, 4, 6, 2, 1},
    {1, 3, 1, 1, 10, 4, 4},
    {1, 3, 2, 2, 9, 4, 3},
    {1, 3, 3, 3, 9, 4, 2},
    {1, 3, 4, 4, 10, 4, 1},
    {1, 4, 1, 5, 14, 3, 4},
    {1, 4, 2, 6, 13, 3, 3},
    {1, 4, 3, 7, 13, 3, 2},
    {1, 4, 4, 8, 14, 3, 1},
    {2, 1, 1, 13, 4, 1, 4},
    {2, 1, 2, 14, 3, 1, 3},
    {2, 1, 3, 15, 4, 1, 2},
    {2, 1, 4, 16, 3, 1, 1},
    {2, 2, 1, 9, 8, 2, 4},
    {2, 2, 2, 10, 7, 2, 3},
    {2, 2, 3, 11, 8, 2, 2},
    {2, 2, 4, 12, 7, 2, 1},
    {2, 3, 1, 13, 12, 4, 4},
    {2, 3, 2, 14, 11, 4, 3},
    {2, 3, 3, 15, 12, 4, 2},
    {2, 3, 4, 16, 11, 4, 1},
    {2, 4, 1, 9, 16, 3, 4},
    {2, 4, 2, 10, 15, 3, 3},
    {2, 4, 3, 11, 16, 3, 2},
    {2, 4, 4, 12, 15, 3, 1},
}};

// j1, j2, subfile for group 1, subfile for group 2 (single round)
struct RowB {
    int j1, j2, s1, s2;
};

inline constexpr std::array<RowB, 49> kExampleB = {{
    {1, 1, 43, 7},
    {1, 2, 44, 7},
    {1, 3, 45, 7},
    {1, 4, 46, 7},
    {1, 5, 47, 7},
    {1, 6, 48, 7},
    {1, 7, 49, 6},
    {2, 1, 43, 14},
    {2, 2, 44, 14},
    {2, 3, 45, 14},
    {2, 4, 46, 14},
    {2, 5, 47, 14},
    {2, 6, 48, 14},
    {2, 7, 49, 13},
    {3, 1, 43, 21},
    {3, 2, 44, 21},
    {3, 3, 45, 21},
    {3, 4, 46, 21},
    {3, 5, 47, 21},
    {3, 6, 48, 21},
    {3, 7, 49, 20},
    {4, 1, 43, 28},
    {4, 2, 44, 28},
    {4, 3, 45, 28},
    {4, 4, 46, 28},
    {4, 5, 47, 28},
    {4, 6, 48, 28},
    {4, 7, 49, 27},
    {5, 1, 43, 35},
    {5, 2, 44, 35},
    {5, 3, 45, 35},
    {5, 4, 46, 35},
    {5, 5, 47, 35},
    {5, 6, 48, 35},
    {5, 7, 49, 34},
    {6, 1, 43, 42},
    {6, 2, 44, 42},
    {6, 3, 45, 42},
    {6, 4, 46, 42},
    {6, 5, 47, 42},
    {6, 6, 48, 42},
    {6, 7, 49, 41},
    {7, 1, 36, 49},
    {7, 2, 37, 49},
    {7, 3, 38, 49},
    {7, 4, 39, 49},
    {7, 5, 40, 49},
    {7, 6, 41, 49},
    {7, 7, 42, 48},
}};

}  // namespace fixtures
