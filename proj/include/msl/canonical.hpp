#pragma once

#include "msl/problem.hpp"

namespace msl {

/// Unitary reduction of (T, H) to block form: U^dagger T U = diag(I_p, 0) and
/// U^dagger H U = diag(h, 0). The stored problem carries the conjugated
/// potential x -> U^dagger Q(x) U.
struct CanonicalForm {
  Matrix U;
  SelfAdjointProblem problem;
  Matrix hBlock;  // p x p Hermitian
};

/// Deterministic: eigenvalues of T sorted so the rank-p eigenspace comes
/// first; within each eigenspace columns are ordered by their pivot row and
/// phased so the largest-modulus entry is real positive. An already-canonical
/// problem maps to U = I.
CanonicalForm canonicalize(const SelfAdjointProblem& spec);

}  // namespace msl
