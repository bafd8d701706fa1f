#pragma once

#include "msl/charfn.hpp"

namespace msl {

/// Second-order central finite differences on a uniform grid; the Robin block
/// at x = pi is closed by ghost-point elimination, rescaled to keep the
/// discretization exactly Hermitian.
struct FDConfig {
  int gridPoints = 3000;  // >= 200
};

/// Lowest `count` eigenvalues of the discretized problem, ascending. Requires
/// block-canonical coordinates (Robin rows for k <= p, Dirichlet for k > p).
/// Refuses counts whose eigenvalues exceed the resolvable range (N_g/10)^2.
std::vector<double> fd_spectrum(const SelfAdjointProblem& canonical, const FDConfig& cfg,
                                int count);

/// Dense discretization matrix, exposed for the Hermiticity check; use small
/// grids only.
Matrix fd_matrix_dense(const SelfAdjointProblem& canonical, const FDConfig& cfg);

/// Richardson extrapolation of -(lambda - lambdaStar) M(lambda) along real
/// offsets {delta, delta/2, delta/4}; equals the residue at a simple pole and
/// the total group residue at a multiple one.
struct ResidueEstimate {
  Matrix value;
  bool conclusive = false;
  double spread = 0.0;  // disagreement between extrapolation orders
};

ResidueEstimate residue_by_limit(const SelfAdjointProblem& spec, double lambdaStar,
                                 double delta0 = 0.0, const IntegratorConfig& cfg = {});

}  // namespace msl
