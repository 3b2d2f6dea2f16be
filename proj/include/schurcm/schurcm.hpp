#pragma once

// Umbrella header: Schur-complement calculus for quantum covariance matrices.

#include "schurcm/cm_io.hpp"
#include "schurcm/counterexample.hpp"
#include "schurcm/errors.hpp"
#include "schurcm/gaussian_ops.hpp"
#include "schurcm/linalg.hpp"
#include "schurcm/measures.hpp"
#include "schurcm/partition.hpp"
#include "schurcm/rng.hpp"
#include "schurcm/symplectic.hpp"
#include "schurcm/verify.hpp"
