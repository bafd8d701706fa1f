#include "msl/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msl {

CanonicalForm canonicalize(const SelfAdjointProblem& spec) {
  const int m = spec.m, p = spec.p;
  auto [evals, evecs] = eigh(spec.T, 1e-10);
  for (int i = 0; i < m; ++i) {
    double d = std::min(std::abs(evals(i)), std::abs(evals(i) - 1.0));
    if (d > 1e-9)
      throw ComputationError("canonicalize: T is not a projector, eigenvalue deviation " +
                             std::to_string(d));
  }

  // rank-1 eigenvectors first; within each group order by pivot row so that a
  // problem already in block form yields U = I
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  auto pivot_row = [&](int j) {
    Eigen::Index r = 0;
    evecs.col(j).cwiseAbs().maxCoeff(&r);
    return static_cast<int>(r);
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    bool ra = evals(a) > 0.5, rb = evals(b) > 0.5;
    if (ra != rb) return ra;
    return pivot_row(a) < pivot_row(b);
  });
  int rank1 = 0;
  for (int i = 0; i < m; ++i) rank1 += evals(i) > 0.5 ? 1 : 0;
  if (rank1 != p)
    throw ComputationError("canonicalize: eigenvalue count near 1 (" + std::to_string(rank1) +
                           ") disagrees with p = " + std::to_string(p));

  Matrix U(m, m);
  for (int j = 0; j < m; ++j) U.col(j) = evecs.col(idx[j]);

  Matrix Tc = U.adjoint() * spec.T * U;
  Matrix Hc = U.adjoint() * spec.H * U;
  Matrix Tblock = Matrix::Zero(m, m);
  Tblock.topLeftCorner(p, p) = Matrix::Identity(p, p);
  if ((Tc - Tblock).cwiseAbs().maxCoeff() > 1e-10)
    throw ComputationError("canonicalize: transformed T deviates from block form by " +
                           std::to_string((Tc - Tblock).cwiseAbs().maxCoeff()));
  Matrix h = hermitized(Hc.topLeftCorner(p, p));
  Matrix Hblock = Matrix::Zero(m, m);
  Hblock.topLeftCorner(p, p) = h;
  if ((Hc - Hblock).cwiseAbs().maxCoeff() > 1e-10)
    throw ComputationError("canonicalize: transformed H deviates from diag(h, 0) by " +
                           std::to_string((Hc - Hblock).cwiseAbs().maxCoeff()));

  CanonicalForm cf;
  cf.U = U;
  cf.hBlock = h;
  // store the exact block matrices; the residuals above are at input-tolerance level
  cf.problem = make_problem(Tblock, Hblock, spec.Q.conjugated(U));
  return cf;
}

}  // namespace msl
