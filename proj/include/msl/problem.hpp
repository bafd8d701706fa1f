#pragma once

#include <string>
#include <vector>

#include "msl/potential.hpp"

namespace msl {

/// Boundary value problem -Y'' + Q(x) Y = lambda Y on (0, pi) with Y(0) = 0 and
/// T (Y'(pi) - H Y(pi)) - (I - T) Y(pi) = 0, where T is an orthogonal projector
/// of rank p (1 <= p <= m-1) and H = H^dagger = T H T.
struct SelfAdjointProblem {
  int m = 0;
  Matrix T;
  Matrix H;
  PotentialSpec Q;
  int p = 0;  // derived as round(trace T), never user-supplied

  Matrix Tperp() const { return Matrix::Identity(m, m) - T; }
};

/// Builds a problem, deriving p from trace(T). Throws ValidationError on
/// dimension mismatch or p outside [1, m-1]; deeper invariant checks are left
/// to validate_problem so that deliberately broken inputs can be reported.
SelfAdjointProblem make_problem(Matrix T, Matrix H, PotentialSpec Q);

struct ValidationCheck {
  std::string name;
  bool pass;
  double deviation;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool pass = false;
  std::string summary() const;
};

ValidationReport validate_problem(const SelfAdjointProblem& spec);

/// Throws ValidationError carrying the report summary when validation fails.
void require_valid(const SelfAdjointProblem& spec);

/// T == diag(I_p, 0) and H == diag(h, 0) within tol?
bool is_block_canonical(const SelfAdjointProblem& spec, double tol = 1e-10);

}  // namespace msl
