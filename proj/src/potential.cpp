#include "msl/potential.hpp"

#include <algorithm>
#include <cmath>

namespace msl {
namespace {

void check_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
}

// sin(x)/x, stable near 0 (complex argument).
Complex sinc(Complex x) {
  if (std::abs(x) < 1e-4) {
    Complex x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// integral over [0,pi] of cos(rho*pi + a*t) dt = pi cos(rho*pi + a*pi/2) sinc(a*pi/2)
Complex int_cos(Complex rho, Complex a) {
  return kPi * std::cos(rho * kPi + a * kPi / 2.0) * sinc(a * kPi / 2.0);
}

Complex int_sin(Complex rho, Complex a) {
  return kPi * std::sin(rho * kPi + a * kPi / 2.0) * sinc(a * kPi / 2.0);
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGl = 16;
constexpr double kGlX[kGl / 2] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[kGl / 2] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
Matrix gauss_segments(int m, const std::vector<double>& xs, double oscRate, F f) {
  Matrix acc = Matrix::Zero(m, m);
  for (size_t s = 0; s + 1 < xs.size(); ++s) {
    double a = xs[s], b = xs[s + 1];
    int pieces = std::max(1, static_cast<int>(std::ceil((b - a) * (oscRate + 1.0) / 2.0)));
    double h = (b - a) / pieces;
    for (int q = 0; q < pieces; ++q) {
      double c = a + (q + 0.5) * h;
      for (int j = 0; j < kGl / 2; ++j) {
        acc += (0.5 * h * kGlW[j]) * (f(c - 0.5 * h * kGlX[j]) + f(c + 0.5 * h * kGlX[j]));
      }
    }
  }
  return acc;
}

}  // namespace

PotentialSpec PotentialSpec::zero(int m) {
  if (m < 1) throw ValidationError("PotentialSpec::zero: dimension must be >= 1");
  PotentialSpec q;
  q.kind_ = Kind::Zero;
  q.m_ = m;
  return q;
}

PotentialSpec PotentialSpec::constant(Matrix a) {
  check_square(a, "PotentialSpec::constant");
  PotentialSpec q;
  q.kind_ = Kind::Constant;
  q.m_ = static_cast<int>(a.rows());
  q.coeffs_.push_back(std::move(a));
  return q;
}

PotentialSpec PotentialSpec::fourier(std::vector<Matrix> coeffs) {
  if (coeffs.empty()) throw ValidationError("PotentialSpec::fourier: empty coefficient list");
  check_square(coeffs[0], "PotentialSpec::fourier");
  int m = static_cast<int>(coeffs[0].rows());
  for (const auto& c : coeffs)
    if (c.rows() != m || c.cols() != m)
      throw ValidationError("PotentialSpec::fourier: coefficient dimension mismatch");
  PotentialSpec q;
  q.kind_ = Kind::Fourier;
  q.m_ = m;
  q.coeffs_ = std::move(coeffs);
  return q;
}

PotentialSpec PotentialSpec::sampled(std::vector<double> abscissae, std::vector<Matrix> values) {
  if (abscissae.size() < 2 || abscissae.size() != values.size())
    throw ValidationError("PotentialSpec::sampled: need matching abscissae/samples, at least 2");
  check_square(values[0], "PotentialSpec::sampled");
  int m = static_cast<int>(values[0].rows());
  for (const auto& v : values)
    if (v.rows() != m || v.cols() != m)
      throw ValidationError("PotentialSpec::sampled: sample dimension mismatch");
  PotentialSpec q;
  q.kind_ = Kind::Sampled;
  q.m_ = m;
  q.xs_ = std::move(abscissae);
  q.vals_ = std::move(values);
  return q;
}

Matrix PotentialSpec::eval(double x) const {
  switch (kind_) {
    case Kind::Zero:
      return Matrix::Zero(m_, m_);
    case Kind::Constant:
      return coeffs_[0];
    case Kind::Fourier: {
      Matrix acc = coeffs_[0];
      for (size_t k = 1; k < coeffs_.size(); ++k) acc += std::cos(k * x) * coeffs_[k];
      return acc;
    }
    case Kind::Sampled: {
      if (x <= xs_.front()) return vals_.front();
      if (x >= xs_.back()) return vals_.back();
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      size_t i = static_cast<size_t>(it - xs_.begin()) - 1;
      double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return (1.0 - t) * vals_[i] + t * vals_[i + 1];
    }
  }
  throw ComputationError("PotentialSpec::eval: unreachable");
}

Matrix PotentialSpec::halfIntegral() const {
  switch (kind_) {
    case Kind::Zero:
      return Matrix::Zero(m_, m_);
    case Kind::Constant:
      return (kPi / 2.0) * coeffs_[0];
    case Kind::Fourier:
      // integral of cos(kx) over [0,pi] vanishes for k >= 1
      return (kPi / 2.0) * coeffs_[0];
    case Kind::Sampled: {
      Matrix acc = Matrix::Zero(m_, m_);
      for (size_t i = 0; i + 1 < xs_.size(); ++i)
        acc += 0.25 * (xs_[i + 1] - xs_[i]) * (vals_[i] + vals_[i + 1]);
      return acc;
    }
  }
  throw ComputationError("PotentialSpec::halfIntegral: unreachable");
}

double PotentialSpec::supNorm() const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return opnorm(coeffs_[0]);
    case Kind::Fourier: {
      double s = 0.0;
      for (const auto& c : coeffs_) s += opnorm(c);
      return s;
    }
    case Kind::Sampled: {
      double s = 0.0;
      for (const auto& v : vals_) s = std::max(s, opnorm(v));
      return s;
    }
  }
  throw ComputationError("PotentialSpec::supNorm: unreachable");
}

PotentialSpec PotentialSpec::conjugated(const Matrix& u) const {
  if (u.rows() != m_ || u.cols() != m_)
    throw ValidationError("PotentialSpec::conjugated: unitary dimension mismatch");
  PotentialSpec q = *this;
  for (auto& c : q.coeffs_) c = (u.adjoint() * c * u).eval();
  for (auto& v : q.vals_) v = (u.adjoint() * v * u).eval();
  return q;
}

Matrix PotentialSpec::oscCos(Complex rho) const {
  switch (kind_) {
    case Kind::Zero:
      return Matrix::Zero(m_, m_);
    case Kind::Constant:
    case Kind::Fourier: {
      Matrix acc = Matrix::Zero(m_, m_);
      for (size_t k = 0; k < coeffs_.size(); ++k) {
        double kk = static_cast<double>(k);
        // cos(rho(pi-2t)) cos(kt) = (cos(rho pi + (k-2rho)t) + cos(rho pi - (k+2rho)t))/2
        Complex val = 0.5 * (int_cos(rho, kk - 2.0 * rho) + int_cos(rho, -kk - 2.0 * rho));
        acc += (0.5 * val) * coeffs_[k];
      }
      return acc;
    }
    case Kind::Sampled: {
      double rate = std::abs(rho) * 2.0;
      return 0.5 * gauss_segments(m_, xs_, rate, [&](double t) -> Matrix {
               return std::cos(rho * (kPi - 2.0 * t)) * eval(t);
             });
    }
  }
  throw ComputationError("PotentialSpec::oscCos: unreachable");
}

Matrix PotentialSpec::oscSin(Complex rho) const {
  switch (kind_) {
    case Kind::Zero:
      return Matrix::Zero(m_, m_);
    case Kind::Constant:
    case Kind::Fourier: {
      Matrix acc = Matrix::Zero(m_, m_);
      for (size_t k = 0; k < coeffs_.size(); ++k) {
        double kk = static_cast<double>(k);
        Complex val = 0.5 * (int_sin(rho, kk - 2.0 * rho) + int_sin(rho, -kk - 2.0 * rho));
        acc += (0.5 * val) * coeffs_[k];
      }
      return acc;
    }
    case Kind::Sampled: {
      double rate = std::abs(rho) * 2.0;
      return 0.5 * gauss_segments(m_, xs_, rate, [&](double t) -> Matrix {
               return std::sin(rho * (kPi - 2.0 * t)) * eval(t);
             });
    }
  }
  throw ComputationError("PotentialSpec::oscSin: unreachable");
}

std::vector<double> PotentialSpec::breakpoints() const {
  std::vector<double> b;
  if (kind_ == Kind::Sampled)
    for (double x : xs_)
      if (x > 1e-14 && x < kPi - 1e-14) b.push_back(x);
  return b;
}

double PotentialSpec::hermitianDeviation() const {
  double d = 0.0;
  for (const auto& c : coeffs_) d = std::max(d, hermitian_deviation(c));
  for (const auto& v : vals_) d = std::max(d, hermitian_deviation(v));
  return d;
}

bool PotentialSpec::gridValid() const {
  if (kind_ != Kind::Sampled) return true;
  if (std::abs(xs_.front()) > 1e-12 || std::abs(xs_.back() - kPi) > 1e-12) return false;
  for (size_t i = 0; i + 1 < xs_.size(); ++i)
    if (xs_[i + 1] <= xs_[i]) return false;
  return true;
}

}  // namespace msl
