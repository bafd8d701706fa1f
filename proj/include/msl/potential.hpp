#pragma once

#include <vector>

#include "msl/linalg.hpp"

namespace msl {

/// Matrix potential Q(x) on [0, pi] in one of four closed representations:
/// zero, a constant Hermitian matrix, a cosine series
/// Q(x) = sum_k A_k cos(k x), or piecewise-linear samples on a grid.
/// The closed variants admit exact means and exact oscillatory integrals,
/// which the asymptotic checks rely on.
class PotentialSpec {
 public:
  enum class Kind { Zero, Constant, Fourier, Sampled };

  PotentialSpec() : kind_(Kind::Zero), m_(1) {}

  static PotentialSpec zero(int m);
  static PotentialSpec constant(Matrix a);
  /// coeffs[k] multiplies cos(k x), k = 0..K.
  static PotentialSpec fourier(std::vector<Matrix> coeffs);
  static PotentialSpec sampled(std::vector<double> abscissae, std::vector<Matrix> values);

  Kind kind() const { return kind_; }
  int dim() const { return m_; }
  bool isZero() const { return kind_ == Kind::Zero; }

  Matrix eval(double x) const;

  /// omega = (1/2) * integral of Q over [0, pi]; exact except for Sampled,
  /// where the piecewise-linear integral (composite trapezoid) is itself exact
  /// for the stored representation.
  Matrix halfIntegral() const;

  /// Upper bound for sup_x ||Q(x)||_2.
  double supNorm() const;

  /// x -> u^dagger Q(x) u, applied coefficient-wise.
  PotentialSpec conjugated(const Matrix& u) const;

  /// (1/2) * integral of cos(rho (pi - 2t)) Q(t) dt over [0, pi].
  /// Closed form for Zero/Constant/Fourier, composite Gauss-Legendre for Sampled.
  Matrix oscCos(Complex rho) const;
  /// Same with sin in place of cos.
  Matrix oscSin(Complex rho) const;

  /// Interior breakpoints the integrator must align to (Sampled only).
  std::vector<double> breakpoints() const;

  /// Max Hermitian deviation over all coefficient/sample matrices.
  double hermitianDeviation() const;
  /// Grid problems: abscissae strictly increasing and spanning [0, pi]?
  bool gridValid() const;

  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  const std::vector<double>& abscissae() const { return xs_; }
  const std::vector<Matrix>& samples() const { return vals_; }

 private:
  Kind kind_;
  int m_;
  std::vector<Matrix> coeffs_;  // Constant: single entry; Fourier: A_0..A_K
  std::vector<double> xs_;
  std::vector<Matrix> vals_;
};

}  // namespace msl
