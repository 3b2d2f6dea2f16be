#pragma once

#include <cmath>

#include "schurcm/schurcm.hpp"

namespace schurcm::testing {

// Two-mode squeezed vacuum: [[c I, s Z], [s Z, c I]] with c = cosh 2r,
// s = sinh 2r, Z = diag(1, -1). Pure for every r.
inline CovarianceMatrix tmsv(double r, const std::string& a = "A", const std::string& b = "B") {
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
    m(0, 2) = m(2, 0) = s;
    m(1, 3) = m(3, 1) = -s;
    return CovarianceMatrix(m, ModePartition({Party{a, 1}, Party{b, 1}}));
}

// Single-mode thermal state nu * identity.
inline CovarianceMatrix thermal(double nu, const std::string& label = "A") {
    return CovarianceMatrix(nu * Matrix::Identity(2, 2), ModePartition({Party{label, 1}}));
}

}  // namespace schurcm::testing
