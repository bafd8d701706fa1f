#include <cmath>

#include "msl/spectrum.hpp"
#include "msl/weights.hpp"

namespace msl {

ComparisonReport compare_problems(const SelfAdjointProblem& a, const SelfAdjointProblem& b, int N,
                                  const LocateOptions& opts) {
  if (a.m != b.m) throw ValidationError("compare_problems: dimensions differ");
  if ((a.T - b.T).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("compare_problems: problems must share the projector T");
  require_valid(a);
  require_valid(b);

  ComparisonReport rep;
  Matrix omA = hermitized(a.Q.halfIntegral());
  Matrix omB = hermitized(b.Q.halfIntegral());
  Matrix Tp = a.Tperp();
  rep.conditionHalf = (a.T * (omA - omB - a.H + b.H) * a.T).norm();
  rep.conditionInt = (Tp * (2.0 * (omA - omB)) * Tp).norm();
  double scale = 1.0 + omA.norm() + omB.norm();
  rep.conditionsHold = rep.conditionHalf <= 1e-9 * scale && rep.conditionInt <= 1e-9 * scale;

  EigenvalueTable ta = locate_spectrum(a, N, opts);
  EigenvalueTable tb = locate_spectrum(b, N, opts);

  rep.scaledRhoDiff = RealMatrix::Zero(N, a.m);
  rep.l2Partial = RealVector::Zero(N);
  double acc = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int k = 1; k <= a.m; ++k) {
      double d = n * (ta.at(n, k).rho - tb.at(n, k).rho);
      rep.scaledRhoDiff(n - 1, k - 1) = d;
      acc += d * d;
    }
    rep.l2Partial(n - 1) = acc;
  }
  double full = rep.l2Partial(N - 1), half = rep.l2Partial(N / 2 - 1);
  rep.tailRatio = full > 0 ? (full - half) / full : 0.0;

  // weight-sum differences on a log-spaced selection of bands; the corollary
  // compares per-cluster sums, which requires matching cluster structures
  CanonicalForm ca = canonicalize(a), cb = canonicalize(b);
  AsymptoticConstants aca = asymptotic_constants(ca.problem, mean_matrix(ca.problem));
  AsymptoticConstants acb = asymptotic_constants(cb.problem, mean_matrix(cb.problem));
  bool sameClusters = aca.clusters.size() == acb.clusters.size();
  if (sameClusters)
    for (size_t i = 0; i < aca.clusters.size(); ++i)
      sameClusters = sameClusters &&
                     aca.clusters[i].halfBand == acb.clusters[i].halfBand &&
                     aca.clusters[i].size() == acb.clusters[i].size();
  if (sameClusters) {
    WeightQuadratureOptions wopts;
    wopts.integ = opts.integ;
    for (int n = std::max(3, N / 4); n <= N; n = std::max(n + 1, n * 3 / 2)) {
      WeightSums sa = weight_sums(a, ta, aca, n, n, wopts);
      WeightSums sb = weight_sums(b, tb, acb, n, n, wopts);
      double worst = 0.0;
      for (size_t i = 0; i < sa.bands[0].perCluster.size(); ++i)
        worst = std::max(worst, (sa.bands[0].perCluster[i].second -
                                 sb.bands[0].perCluster[i].second)
                                    .norm());
      rep.weightBands.push_back(n);
      rep.weightDiffScaled.push_back(worst / (static_cast<double>(n) * n));
    }
  }
  return rep;
}

}  // namespace msl
