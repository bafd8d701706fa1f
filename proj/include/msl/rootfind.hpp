#pragma once

#include <functional>

#include "msl/linalg.hpp"

namespace msl::detail {

/// Safeguarded bisection/secant on a real function over a sign-change bracket.
/// Returns the root abscissa; `xtol` is absolute.
double refine_bracket(const std::function<double(double)>& f, double a, double b, double fa,
                      double fb, double xtol, int maxIter = 90);

struct WindingResult {
  int count = 0;       // nearest integer of the total phase / 2pi
  bool ok = false;     // phase resolved and total close to an integer
  double residual = 0; // |total/2pi - count|
  int evals = 0;
  double radiusUsed = 0.0;
};

/// Argument-principle zero count of an analytic function over the circle
/// |x - center| = radius, by adaptive phase tracking (segments split until
/// each phase increment is below pi/2).
WindingResult winding_circle(const std::function<Complex(Complex)>& g, Complex center,
                             double radius, int minNodes = 16, int maxEvals = 3000);

/// Same, with automatic radius nudging when a node lands on a zero or the
/// phase fails to resolve. Nudges stay within maxNudge of the requested
/// radius. Throws ComputationError if no radius works.
WindingResult winding_circle_robust(const std::function<Complex(Complex)>& g, Complex center,
                                    double radius, int minNodes = 16, double maxNudge = 0.15);

/// Minimum of a V-shaped nonnegative function (|x - x*| times a smooth
/// positive factor): ternary search to localize, then straight-line fit of the
/// two flanks; the flank intersection beats the sqrt(noise) barrier of direct
/// minimization. Returns the abscissa.
double vfit_min(const std::function<double(double)>& f, double a, double b);

}  // namespace msl::detail
