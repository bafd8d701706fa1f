#pragma once

#include "msl/weights.hpp"

namespace msl {

enum class Coupling { Delta, DeltaPrime };

/// Star graph of m edges of length pi, Dirichlet at the boundary vertices,
/// delta or delta' matching at the internal vertex. Edge potentials are
/// scalar (1x1) real-valued PotentialSpecs. delta' is supported for beta = 0
/// only; beta != 0 reduces to a Robin-type condition outside this scope.
struct StarGraphSpec {
  int m = 0;
  std::vector<PotentialSpec> edges;
  double beta = 0.0;
  Coupling coupling = Coupling::Delta;
};

void validate_graph(const StarGraphSpec& g);

/// Matrix problem in the original (edge) coordinates: Q = diag(q_j) with
///   delta:  T has all entries 1/m, H = (beta/m) T          (p = 1)
///   delta': T = I - (1/m) ones, H = 0, beta = 0 required    (p = m-1)
SelfAdjointProblem to_matrix_problem(const StarGraphSpec& g);

/// Deterministic unitary bridging edge and block-canonical coordinates:
/// Householder completion of the constant vector, permuted for delta' so the
/// rank-(m-1) block leads.
Matrix star_graph_unitary(int m, Coupling coupling);

/// Predictions of the coupling-specific spectral constants:
/// vertexZ = (1/m) sum omega_j - beta/m (the band of size one), and the roots
/// of P(z) = d/dz prod (z - omega_j), which interlace the edge means.
struct GraphPrediction {
  std::vector<double> edgeMeans;   // omega_j = (1/2) integral q_j
  double vertexZ = 0.0;
  std::vector<double> polyRoots;   // ascending, with multiplicity
};

GraphPrediction graph_constants(const StarGraphSpec& g);

struct GraphReport {
  GraphPrediction prediction;
  double zAgreement = 0.0;  // max |P-roots / vertexZ  vs  matrix-problem z|
  // residuals of the coupling theorems, per band
  SeriesDiagnostic rhoHalfResidualN;      // vertex band, z/(pi n) form
  SeriesDiagnostic rhoHalfResidualNHalf;  // vertex band, z/(pi (n-1/2)) form
  SeriesDiagnostic vertexClusterDev;      // alpha scaled vs (2 base^2/pi) T-side matrix
  SeriesDiagnostic oppositeBandDev;       // alpha_n^{II} (delta) or alpha_n^{(m)} (delta')
  std::vector<std::pair<int, SeriesDiagnostic>> interiorClusterDev;  // vs U A^(s) U^dagger
};

GraphReport verify_graph_theorems(const StarGraphSpec& g, int N, const LocateOptions& opts = {},
                                  const WeightQuadratureOptions& wopts = {});

}  // namespace msl
