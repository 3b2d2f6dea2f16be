#pragma once

#include <array>

#include "schurcm/symplectic.hpp"

namespace schurcm {

// 8x8 quantum CM on parties A (2 modes), B1 (1 mode), B2 (1 mode) violating
// monogamy of steerability with respect to the steered party:
// G(B1B2 > A) - G(B1 > A) - G(B2 > A) = -0.816863. Entries are exact.
inline constexpr std::array<double, 64> kCounterexampleEntries = {
    1.2,  -0.3, 0.4,  -2.7, 1.8,  -1.9,  0.4,  -0.1,  //
    -0.3, 0.9,  -1.2, 0.4,  -1.2, 0.5,   -0.4, 0.1,   //
    0.4,  -1.2, 4.5,  1.6,  -1.4, 1.8,   -0.1, -0.3,  //
    -2.7, 0.4,  1.6,  12.0, -9.5, 10.1,  -1.4, -0.3,  //
    1.8,  -1.2, -1.4, -9.5, 11.9, -11.5, 1.6,  0.8,   //
    -1.9, 0.5,  1.8,  10.1, -11.5, 11.9, -1.0, -1.4,  //
    0.4,  -0.4, -0.1, -1.4, 1.6,  -1.0,  2.4,  -2.0,  //
    -0.1, 0.1,  -0.3, -0.3, 0.8,  -1.4,  -2.0, 2.8,
};

inline CovarianceMatrix counterexample_cm() {
    Matrix m(8, 8);
    for (Index r = 0; r < 8; ++r)
        for (Index c = 0; c < 8; ++c) m(r, c) = kCounterexampleEntries[static_cast<std::size_t>(8 * r + c)];
    return CovarianceMatrix(m, ModePartition({Party{"A", 2}, Party{"B1", 1}, Party{"B2", 1}}));
}

}  // namespace schurcm
