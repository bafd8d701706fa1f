#include "msl/propagator.hpp"

#include <array>
#include <cmath>

namespace msl {
namespace {

// Cooper-Verner, 11 stages, order 8. Coefficients are exact in sqrt(21).
struct Rk8Tableau {
  static constexpr int stages = 11;
  double a[11][10] = {};
  double b[11] = {};
  double c[11] = {};
  Rk8Tableau() {
    const double s = std::sqrt(21.0);
    c[0] = 0;
    c[1] = 0.5;
    c[2] = 0.5;
    c[3] = (7 + s) / 14;
    c[4] = (7 + s) / 14;
    c[5] = 0.5;
    c[6] = (7 - s) / 14;
    c[7] = (7 - s) / 14;
    c[8] = 0.5;
    c[9] = (7 + s) / 14;
    c[10] = 1;
    a[1][0] = 1.0 / 2;
    a[2][0] = 1.0 / 4;
    a[2][1] = 1.0 / 4;
    a[3][0] = 1.0 / 7;
    a[3][1] = -(7 + 3 * s) / 98;
    a[3][2] = (21 + 5 * s) / 49;
    a[4][0] = (11 + s) / 84;
    a[4][2] = (18 + 4 * s) / 63;
    a[4][3] = (21 - s) / 252;
    a[5][0] = (5 + s) / 48;
    a[5][2] = (9 + s) / 36;
    a[5][3] = (-231 + 14 * s) / 360;
    a[5][4] = (63 - 7 * s) / 80;
    a[6][0] = (10 - s) / 42;
    a[6][2] = (-432 + 92 * s) / 315;
    a[6][3] = (633 - 145 * s) / 90;
    a[6][4] = (-504 + 115 * s) / 70;
    a[6][5] = (63 - 13 * s) / 35;
    a[7][0] = 1.0 / 14;
    a[7][4] = (14 - 3 * s) / 126;
    a[7][5] = (13 - 3 * s) / 63;
    a[7][6] = 1.0 / 9;
    a[8][0] = 1.0 / 32;
    a[8][4] = (91 - 21 * s) / 576;
    a[8][5] = 11.0 / 72;
    a[8][6] = -(385 + 75 * s) / 1152;
    a[8][7] = (63 + 13 * s) / 128;
    a[9][0] = 1.0 / 14;
    a[9][4] = 1.0 / 9;
    a[9][5] = -(733 + 147 * s) / 2205;
    a[9][6] = (515 + 111 * s) / 504;
    a[9][7] = -(51 + 11 * s) / 56;
    a[9][8] = (132 + 28 * s) / 245;
    a[10][4] = (-42 + 7 * s) / 18;
    a[10][5] = (-18 + 28 * s) / 45;
    a[10][6] = -(273 + 53 * s) / 72;
    a[10][7] = (301 + 53 * s) / 72;
    a[10][8] = (28 - 28 * s) / 45;
    a[10][9] = (49 - 7 * s) / 18;
    b[0] = 1.0 / 20;
    b[7] = 49.0 / 180;
    b[8] = 16.0 / 45;
    b[9] = 49.0 / 180;
    b[10] = 1.0 / 20;
  }
};

const Rk8Tableau kRk8;

// State: m x 4m block matrix [Y | Y'], where Y = [C S] is m x 2m.
class System {
 public:
  System(const SelfAdjointProblem& spec, Complex lambda)
      : q_(&spec.Q), lambda_(lambda), m_(spec.m) {}

  void deriv(double x, const Matrix& st, Matrix& out) const {
    const int w = 2 * m_;
    out.leftCols(w) = st.rightCols(w);
    out.rightCols(w).noalias() = q_->eval(x) * st.leftCols(w);
    out.rightCols(w) -= lambda_ * st.leftCols(w);
  }

  Matrix initialState() const {
    Matrix st = Matrix::Zero(m_, 4 * m_);
    st.block(0, 0, m_, m_) = Matrix::Identity(m_, m_);          // C(0) = I
    st.block(0, 3 * m_, m_, m_) = Matrix::Identity(m_, m_);     // S'(0) = I
    return st;
  }

 private:
  const PotentialSpec* q_;
  Complex lambda_;
  int m_;
};

void rk4_step(const System& sys, double x, double h, Matrix& y, std::array<Matrix, 11>& k,
              Matrix& tmp) {
  sys.deriv(x, y, k[0]);
  tmp = y + (h / 2) * k[0];
  sys.deriv(x + h / 2, tmp, k[1]);
  tmp = y + (h / 2) * k[1];
  sys.deriv(x + h / 2, tmp, k[2]);
  tmp = y + h * k[2];
  sys.deriv(x + h, tmp, k[3]);
  y += (h / 6) * (k[0] + 2.0 * k[1] + 2.0 * k[2] + k[3]);
}

void rk8_step(const System& sys, double x, double h, Matrix& y, std::array<Matrix, 11>& k,
              Matrix& tmp) {
  sys.deriv(x, y, k[0]);
  for (int i = 1; i < Rk8Tableau::stages; ++i) {
    tmp = y;
    for (int j = 0; j < i; ++j)
      if (kRk8.a[i][j] != 0.0) tmp += (h * kRk8.a[i][j]) * k[j];
    sys.deriv(x + kRk8.c[i] * h, tmp, k[i]);
  }
  for (int i = 0; i < Rk8Tableau::stages; ++i)
    if (kRk8.b[i] != 0.0) y += (h * kRk8.b[i]) * k[i];
}

// Integrate over [0, pi] with `n` steps distributed over the potential's
// breakpoint segments (uniform inside each segment).
Matrix integrate(const SelfAdjointProblem& spec, Complex lambda, OneStepMethod method, int n) {
  System sys(spec, lambda);
  Matrix y = sys.initialState();
  std::array<Matrix, 11> k;
  for (auto& ki : k) ki.resize(y.rows(), y.cols());
  Matrix tmp(y.rows(), y.cols());

  std::vector<double> nodes = spec.Q.breakpoints();
  nodes.insert(nodes.begin(), 0.0);
  nodes.push_back(kPi);

  for (size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    double x0 = nodes[seg], x1 = nodes[seg + 1];
    int ns = std::max(1, static_cast<int>(std::lround(n * (x1 - x0) / kPi)));
    double h = (x1 - x0) / ns;
    for (int i = 0; i < ns; ++i) {
      double x = x0 + i * h;
      if (method == OneStepMethod::Rk8)
        rk8_step(sys, x, h, y, k, tmp);
      else
        rk4_step(sys, x, h, y, k, tmp);
      if ((i & 31) == 0 && !y.allFinite())
        throw ComputationError("propagate: non-finite state at x = " + std::to_string(x));
    }
  }
  if (!y.allFinite()) throw ComputationError("propagate: non-finite state at x = pi");
  return y;
}

int suggested_steps(const IntegratorConfig& cfg, double rhoEff) {
  double phase = rhoEff * kPi + 6.0;
  double n;
  if (cfg.order == OneStepMethod::Rk8)
    n = std::pow(phase, 9.0 / 8.0) * std::pow(362880.0 * cfg.tolerance, -1.0 / 8.0);
  else
    n = std::pow(phase, 5.0 / 4.0) * std::pow(120.0 * cfg.tolerance, -1.0 / 4.0);
  n = std::max({n, static_cast<double>(cfg.steps), 16.0});
  if (n > 5e6) throw ComputationError("propagate: |rho| too large for the fixed-step integrator");
  return static_cast<int>(std::ceil(n));
}

}  // namespace

PropagatorValue propagate(const SelfAdjointProblem& spec, Complex lambda,
                          const IntegratorConfig& cfg) {
  if (cfg.steps < 16) throw ValidationError("IntegratorConfig.steps must be >= 16");
  if (!(cfg.tolerance > 0)) throw ValidationError("IntegratorConfig.tolerance must be > 0");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw ValidationError("propagate: lambda must be finite");

  const int m = spec.m;
  double rhoEff = std::sqrt(std::abs(lambda) + spec.Q.supNorm());
  int n = suggested_steps(cfg, rhoEff);
  // error ratio between successive resolutions, used to bound the fine error
  double gain = cfg.order == OneStepMethod::Rk8 ? 256.0 : 16.0;

  Matrix coarse = integrate(spec, lambda, cfg.order, n);
  Matrix fine;
  bool accepted = false;
  for (int round = 0; round < 13 && !accepted; ++round) {
    fine = integrate(spec, lambda, cfg.order, 2 * n);
    double scale = 1.0 + fine.cwiseAbs().maxCoeff();
    double diff = (fine - coarse).cwiseAbs().maxCoeff();
    if (diff <= cfg.tolerance * scale * (gain / 8.0)) {
      accepted = true;
    } else {
      coarse = std::move(fine);
      n *= 2;
      if (n > 4e7) throw ComputationError("propagate: step doubling failed to converge");
    }
  }
  if (!accepted) throw ComputationError("propagate: step doubling failed to converge");

  PropagatorValue out;
  out.lambda = lambda;
  out.rho = std::sqrt(lambda);
  out.C = fine.block(0, 0, m, m);
  out.S = fine.block(0, m, m, m);
  out.Cp = fine.block(0, 2 * m, m, m);
  out.Sp = fine.block(0, 3 * m, m, m);
  return out;
}

PropagatorValue asymptotic_reference(const SelfAdjointProblem& spec, Complex rho) {
  if (std::abs(rho) < 1.0)
    throw ValidationError("asymptotic_reference: requires |rho| >= 1");
  const int m = spec.m;
  Matrix I = Matrix::Identity(m, m);
  Matrix omega = hermitized(spec.Q.halfIntegral());
  Matrix ic = spec.Q.oscCos(rho);
  Matrix is = spec.Q.oscSin(rho);
  Complex sn = std::sin(rho * kPi), cs = std::cos(rho * kPi);

  PropagatorValue out;
  out.rho = rho;
  out.lambda = rho * rho;
  out.S = (sn / rho) * I - (cs / (rho * rho)) * omega + ic / (rho * rho);
  out.Sp = cs * I + (sn / rho) * omega - is / rho;
  out.C = cs * I + (sn / rho) * omega + is / rho;
  out.Cp = (-rho * sn) * I + cs * omega + ic;
  return out;
}

}  // namespace msl
