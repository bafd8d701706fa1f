#pragma once

#include <vector>

#include "msl/omega.hpp"

namespace msl {

/// Group of indices k sharing one z value (within the clustering tolerance).
/// Half-band clusters live in k = 1..p, integer-band clusters in k = p+1..m;
/// the two bands are never merged even when z values coincide.
struct Cluster {
  int id = 0;
  bool halfBand = false;
  double z = 0.0;             // representative value (mean of members)
  std::vector<int> members;   // k indices, 1-based, contiguous
  int size() const { return static_cast<int>(members.size()); }
};

/// Constants governing the eigenvalue corrections z_k/(pi * base) and the
/// scaled weight-sum limits A^(s):
///   zHalf = spectrum of (omega11 - h), zInt = spectrum of omega22,
///   calV (omega11 - h) calV^dagger = E,  calU omega22 calU^dagger = D,
///   A^(s) = diag(calV^dagger T_s calV, 0) or diag(0, calU^dagger T_s calU)
/// with T_s selecting the cluster of s on the diagonalized frame.
struct AsymptoticConstants {
  int m = 0, p = 0;
  std::vector<double> zHalf;  // z_1..z_p ascending
  std::vector<double> zInt;   // z_{p+1}..z_m ascending
  std::vector<Cluster> clusters;
  std::vector<Matrix> Amats;  // indexed s-1, s = 1..m (equal within a cluster)
  Matrix calU;                // (m-p) x (m-p)
  Matrix calV;                // p x p
  RealVector D, E;
  double clusterTol = 0.0;

  double z(int k) const;                   // k = 1..m
  const Cluster& clusterOf(int k) const;   // cluster containing index k
  std::vector<int> representatives() const;  // first member of each cluster
};

AsymptoticConstants asymptotic_constants(const SelfAdjointProblem& canonical,
                                         const OmegaBlocks& omega);

}  // namespace msl
