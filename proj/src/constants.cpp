#include "msl/constants.hpp"

#include <algorithm>
#include <cmath>

namespace msl {
namespace {

// cutoff for treating numerically-equal z values as one cluster
double cluster_tolerance(const std::vector<double>& zHalf, const std::vector<double>& zInt) {
  double zmax = 0.0;
  for (double z : zHalf) zmax = std::max(zmax, std::abs(z));
  for (double z : zInt) zmax = std::max(zmax, std::abs(z));
  return 1e-8 * std::max(1.0, zmax);
}

void append_clusters(std::vector<Cluster>& out, const std::vector<double>& z, bool halfBand,
                     int kOffset, double tol) {
  size_t i = 0;
  while (i < z.size()) {
    Cluster c;
    c.id = static_cast<int>(out.size()) + 1;
    c.halfBand = halfBand;
    size_t j = i;
    double acc = 0.0;
    while (j < z.size() && (j == i || z[j] - z[j - 1] <= tol)) {
      c.members.push_back(kOffset + static_cast<int>(j) + 1);
      acc += z[j];
      ++j;
    }
    c.z = acc / static_cast<double>(j - i);
    out.push_back(std::move(c));
    i = j;
  }
}

}  // namespace

double AsymptoticConstants::z(int k) const {
  return k <= p ? zHalf[k - 1] : zInt[k - p - 1];
}

const Cluster& AsymptoticConstants::clusterOf(int k) const {
  for (const auto& c : clusters)
    if (std::find(c.members.begin(), c.members.end(), k) != c.members.end()) return c;
  throw ComputationError("clusterOf: index out of range");
}

std::vector<int> AsymptoticConstants::representatives() const {
  std::vector<int> reps;
  for (const auto& c : clusters) reps.push_back(c.members.front());
  return reps;
}

AsymptoticConstants asymptotic_constants(const SelfAdjointProblem& canonical,
                                         const OmegaBlocks& omega) {
  const int m = canonical.m, p = canonical.p;
  AsymptoticConstants ac;
  ac.m = m;
  ac.p = p;

  Matrix h = canonical.H.topLeftCorner(p, p);
  auto [E, Pv] = eigh(omega.omega11 - h, 1e-10);
  auto [D, Pu] = eigh(omega.omega22, 1e-10);
  ac.E = E;
  ac.D = D;
  ac.calV = Pv.adjoint();
  ac.calU = Pu.adjoint();
  ac.zHalf.assign(E.data(), E.data() + p);
  ac.zInt.assign(D.data(), D.data() + (m - p));

  ac.clusterTol = cluster_tolerance(ac.zHalf, ac.zInt);
  append_clusters(ac.clusters, ac.zHalf, true, 0, ac.clusterTol);
  append_clusters(ac.clusters, ac.zInt, false, p, ac.clusterTol);

  // A^(s): spectral projector of the cluster, embedded into the full space
  ac.Amats.assign(m, Matrix());
  for (const auto& c : ac.clusters) {
    Matrix A = Matrix::Zero(m, m);
    if (c.halfBand) {
      Matrix proj = Matrix::Zero(p, p);
      for (int k : c.members) proj += Pv.col(k - 1) * Pv.col(k - 1).adjoint();
      A.topLeftCorner(p, p) = proj;
    } else {
      Matrix proj = Matrix::Zero(m - p, m - p);
      for (int k : c.members) proj += Pu.col(k - p - 1) * Pu.col(k - p - 1).adjoint();
      A.bottomRightCorner(m - p, m - p) = proj;
    }
    for (int k : c.members) ac.Amats[k - 1] = A;
  }

  // sum identity: sum over representatives of z_s A^(s) = diag(omega11 - h, omega22)
  Matrix sum = Matrix::Zero(m, m);
  for (int s : ac.representatives()) sum += ac.z(s) * ac.Amats[s - 1];
  Matrix expect = Matrix::Zero(m, m);
  expect.topLeftCorner(p, p) = omega.omega11 - h;
  expect.bottomRightCorner(m - p, m - p) = omega.omega22;
  double dev = (sum - expect).cwiseAbs().maxCoeff();
  if (dev > 1e-9)
    throw ComputationError("asymptotic_constants: sum identity violated by " + std::to_string(dev));

  return ac;
}

}  // namespace msl
