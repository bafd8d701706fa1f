#pragma once

#include <optional>

#include "msl/propagator.hpp"

namespace msl {

/// Characteristic data at one lambda: W = V(S(pi, lambda)), its determinant,
/// and (when requested away from poles) the Weyl matrix M = -V(S)^{-1} V(C).
struct CharValue {
  Complex lambda;
  Matrix W;
  Complex det;
  std::optional<Matrix> M;
};

inline constexpr double kNearPoleCondition = 1e12;

/// V(Y) = T (Y'(pi) - H Y(pi)) - (I - T) Y(pi).
Matrix boundary_form(const SelfAdjointProblem& spec, const Matrix& Ypi, const Matrix& Yppi);

CharValue characteristic(const SelfAdjointProblem& spec, Complex lambda,
                         const IntegratorConfig& cfg = {});

/// Throws NearPoleError when cond(W) exceeds kNearPoleCondition.
CharValue weyl(const SelfAdjointProblem& spec, Complex lambda, const IntegratorConfig& cfg = {});

namespace detail {

/// Everything the spectrum/weights machinery needs from one integration at
/// rho: the boundary forms, the row-balanced matrix (T + rho T_perp) W whose
/// determinant has O(1) scale across bands, and its smallest singular value
/// (vanishes linearly at eigenvalues, which refines multiple roots past the
/// sqrt-accuracy barrier of |det| minimization).
struct CharSample {
  Complex rho;
  Complex lambda;
  Matrix W, VC;
  Matrix Wbal, VCbal;
  Complex detW;
  Complex detBal;
  double sigmaMin = 0.0, sigmaMax = 0.0;
};

CharSample char_sample_rho(const SelfAdjointProblem& spec, Complex rho,
                           const IntegratorConfig& cfg);
CharSample char_sample_lambda(const SelfAdjointProblem& spec, Complex lambda,
                              const IntegratorConfig& cfg);

/// Weyl matrix from a sample (balanced solve). Throws NearPoleError on
/// condition overflow.
Matrix weyl_from_sample(const CharSample& cs);

}  // namespace detail

}  // namespace msl
