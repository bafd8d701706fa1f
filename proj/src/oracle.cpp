#include "msl/oracle.hpp"

#include <cmath>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace msl {
namespace {

// Index map of the unknown vector: nodes i = 1..Ng-1 carry all m components,
// node Ng carries only the first p (the Dirichlet block vanishes there).
struct FdLayout {
  int m, p, ng;
  int size() const { return (ng - 1) * m + p; }
  int index(int node, int comp) const {  // node 1..ng, comp 0..m-1
    return (node - 1) * m + comp;
  }
};

template <typename Setter>
void fd_assemble(const SelfAdjointProblem& spec, const FdLayout& L, Setter&& set) {
  const int m = L.m, p = L.p, ng = L.ng;
  const double h = kPi / ng;
  const double ih2 = 1.0 / (h * h);
  Matrix hmat = spec.H.topLeftCorner(p, p);

  for (int node = 1; node <= ng - 1; ++node) {
    Matrix q = spec.Q.eval(node * h);
    for (int a = 0; a < m; ++a) {
      set(L.index(node, a), L.index(node, a), Complex(2.0 * ih2, 0.0));
      for (int b = 0; b < m; ++b) set(L.index(node, a), L.index(node, b), q(a, b));
      if (node + 1 <= ng - 1) {
        set(L.index(node, a), L.index(node + 1, a), Complex(-ih2, 0.0));
        set(L.index(node + 1, a), L.index(node, a), Complex(-ih2, 0.0));
      }
    }
  }
  // Robin closure at x = pi: ghost elimination plus the sqrt(2) similarity
  // that restores Hermitian form
  Matrix qpi = spec.Q.eval(kPi);
  const double c = std::sqrt(2.0);
  for (int a = 0; a < p; ++a) {
    set(L.index(ng, a), L.index(ng, a), Complex(2.0 * ih2, 0.0));
    for (int b = 0; b < p; ++b) {
      set(L.index(ng, a), L.index(ng, b), qpi(a, b));
      set(L.index(ng, a), L.index(ng, b), Complex(-2.0 / h, 0.0) * hmat(a, b));
    }
    set(L.index(ng - 1, a), L.index(ng, a), Complex(-c * ih2, 0.0));
    set(L.index(ng, a), L.index(ng - 1, a), Complex(-c * ih2, 0.0));
  }
}

}  // namespace

Matrix fd_matrix_dense(const SelfAdjointProblem& canonical, const FDConfig& cfg) {
  if (!is_block_canonical(canonical))
    throw ValidationError("fd_spectrum: problem must be in block-canonical coordinates");
  FdLayout L{canonical.m, canonical.p, cfg.gridPoints};
  Matrix A = Matrix::Zero(L.size(), L.size());
  fd_assemble(canonical, L, [&](int i, int j, Complex v) { A(i, j) += v; });
  return A;
}

std::vector<double> fd_spectrum(const SelfAdjointProblem& canonical, const FDConfig& cfg,
                                int count) {
  if (cfg.gridPoints < 200) throw ValidationError("FDConfig.gridPoints must be >= 200");
  if (!is_block_canonical(canonical))
    throw ValidationError("fd_spectrum: problem must be in block-canonical coordinates");
  if (count < 1) throw ValidationError("fd_spectrum: count must be >= 1");

  const int m = canonical.m;
  double lamTop = std::pow(static_cast<double>(count) / m + 1.0, 2.0) + canonical.Q.supNorm();
  double lamMax = std::pow(cfg.gridPoints / 10.0, 2.0);
  if (lamTop > lamMax)
    throw ValidationError("fd_spectrum: requested count needs lambda ~" + std::to_string(lamTop) +
                          " beyond the resolvable range " + std::to_string(lamMax));

  FdLayout L{m, canonical.p, cfg.gridPoints};
  const int n = L.size();
  const int kd = m;  // half-bandwidth in the node-major ordering
  const int ldab = kd + 1;
  std::vector<std::complex<double>> ab(static_cast<size_t>(ldab) * n, 0.0);
  // LAPACK upper band storage, column-major: A(i,j) -> ab[kd + i - j, j], i <= j
  fd_assemble(canonical, L, [&](int i, int j, Complex v) {
    if (i > j) return;  // fill the upper triangle only; symmetry is structural
    if (j - i > kd) throw ComputationError("fd_spectrum: bandwidth violation");
    ab[static_cast<size_t>(kd + i - j) + static_cast<size_t>(j) * ldab] += v;
  });

  std::vector<double> w(n);
  std::vector<std::complex<double>> zdummy(1);
  int info = LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'U', n, kd, ab.data(), ldab, w.data(),
                           zdummy.data(), 1);
  if (info != 0)
    throw ComputationError("fd_spectrum: LAPACK zhbev failed with info = " + std::to_string(info));
  w.resize(count);
  return w;
}

ResidueEstimate residue_by_limit(const SelfAdjointProblem& spec, double lambdaStar, double delta0,
                                 const IntegratorConfig& cfg) {
  if (delta0 <= 0) delta0 = 1e-3 * (1.0 + std::abs(lambdaStar));
  auto f = [&](double d) -> Matrix {
    CharValue cv = weyl(spec, Complex(lambdaStar + d, 0.0), cfg);
    return Matrix(-d * (*cv.M));
  };
  Matrix f0 = f(delta0), f1 = f(delta0 / 2), f2 = f(delta0 / 4);
  // one Richardson level kills the delta term, the second the delta^2 term
  Matrix r10 = 2.0 * f1 - f0;
  Matrix r11 = 2.0 * f2 - f1;
  Matrix r2 = (4.0 * r11 - r10) / 3.0;

  ResidueEstimate est;
  est.value = r2;
  est.spread = (r11 - r10).norm() / (1.0 + r2.norm());
  est.conclusive = est.spread < 1e-3;
  return est;
}

}  // namespace msl
