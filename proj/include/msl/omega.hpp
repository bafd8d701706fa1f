#pragma once

#include "msl/problem.hpp"

namespace msl {

/// omega = (1/2) integral of Q over [0, pi], sliced by the projector rank p.
struct OmegaBlocks {
  Matrix omega;    // m x m
  Matrix omega11;  // p x p
  Matrix omega12;  // p x (m-p)
  Matrix omega21;  // (m-p) x p
  Matrix omega22;  // (m-p) x (m-p)
};

/// Requires the problem in block-canonical coordinates.
OmegaBlocks mean_matrix(const SelfAdjointProblem& canonical);

}  // namespace msl
