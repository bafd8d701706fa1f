#include "msl/problem.hpp"

#include <cmath>
#include <sstream>

namespace msl {

SelfAdjointProblem make_problem(Matrix T, Matrix H, PotentialSpec Q) {
  int m = static_cast<int>(T.rows());
  if (m < 2) throw ValidationError("T: dimension must be >= 2");
  if (T.cols() != m) throw ValidationError("T: must be square");
  if (H.rows() != m || H.cols() != m) throw ValidationError("H: dimension mismatch with T");
  if (Q.dim() != m) throw ValidationError("Q: dimension mismatch with T");
  double tr = T.trace().real();
  int p = static_cast<int>(std::lround(tr));
  if (p < 1 || p > m - 1)
    throw ValidationError("p = round(trace T) = " + std::to_string(p) + " outside [1, m-1]");
  SelfAdjointProblem spec;
  spec.m = m;
  spec.T = std::move(T);
  spec.H = std::move(H);
  spec.Q = std::move(Q);
  spec.p = p;
  return spec;
}

ValidationReport validate_problem(const SelfAdjointProblem& spec) {
  constexpr double tol = 1e-12;
  ValidationReport rep;
  auto add = [&rep](std::string name, double dev, double bound) {
    rep.checks.push_back({std::move(name), dev <= bound, dev});
  };

  const Matrix& T = spec.T;
  add("T.hermitian", hermitian_deviation(T), tol);
  add("T.projector", (T * T - T).cwiseAbs().maxCoeff(), tol);
  add("H.hermitian", hermitian_deviation(spec.H), tol);
  add("H.range", (spec.H - T * spec.H * T).cwiseAbs().maxCoeff(), tol);
  add("Q.hermitian", spec.Q.hermitianDeviation(), tol);
  rep.checks.push_back({"Q.grid", spec.Q.gridValid(), 0.0});

  double tr = T.trace().real();
  double pdev = std::abs(tr - spec.p) + std::abs(T.trace().imag());
  bool prange = spec.p >= 1 && spec.p <= spec.m - 1;
  rep.checks.push_back({"p.range", prange && pdev <= 1e-10, pdev});

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "valid" : "invalid");
  for (const auto& c : checks)
    os << "; " << c.name << (c.pass ? " ok" : " FAIL") << " (dev " << c.deviation << ")";
  return os.str();
}

void require_valid(const SelfAdjointProblem& spec) {
  ValidationReport rep = validate_problem(spec);
  if (!rep.pass) throw ValidationError("problem validation failed: " + rep.summary());
}

bool is_block_canonical(const SelfAdjointProblem& spec, double tol) {
  Matrix Tc = Matrix::Zero(spec.m, spec.m);
  Tc.topLeftCorner(spec.p, spec.p) = Matrix::Identity(spec.p, spec.p);
  if ((spec.T - Tc).cwiseAbs().maxCoeff() > tol) return false;
  // H must vanish outside the leading p x p block
  for (int i = 0; i < spec.m; ++i)
    for (int j = 0; j < spec.m; ++j)
      if ((i >= spec.p || j >= spec.p) && std::abs(spec.H(i, j)) > tol) return false;
  return true;
}

}  // namespace msl
