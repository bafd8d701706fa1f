#pragma once

#include "msl/problem.hpp"

namespace msl {

enum class OneStepMethod { Rk4, Rk8 };

/// Fixed-order one-step integrator settings. The driver picks a step count
/// from |rho| and `tolerance`, then verifies it by step doubling: the run is
/// accepted once coarse/fine results agree to the tolerance (relative to the
/// solution scale), doubling otherwise.
struct IntegratorConfig {
  int steps = 64;  // lower bound on the step count
  OneStepMethod order = OneStepMethod::Rk8;
  double tolerance = 1e-10;
};

/// Matrix solutions of -Y'' + Q Y = lambda Y evaluated at x = pi:
/// S(0) = 0, S'(0) = I and C(0) = I, C'(0) = 0.
struct PropagatorValue {
  Complex lambda;
  Complex rho;  // principal sqrt(lambda)
  Matrix S, Sp, C, Cp;
};

PropagatorValue propagate(const SelfAdjointProblem& spec, Complex lambda,
                          const IntegratorConfig& cfg = {});

/// Leading large-rho expansion of S, S', C, C' at x = pi, built from omega and
/// the oscillatory integrals of Q; remainders decay like rho^{-3}, rho^{-2},
/// rho^{-2}, rho^{-1}. Requires |rho| >= 1.
PropagatorValue asymptotic_reference(const SelfAdjointProblem& spec, Complex rho);

}  // namespace msl
