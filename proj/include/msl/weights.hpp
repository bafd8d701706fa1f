#pragma once

#include "msl/spectrum.hpp"

namespace msl {

/// One z-cluster of band n together with the rho-plane contour that isolates
/// its eigenvalues.
struct WeightGroup {
  int n = 0;
  int clusterId = 0;
  bool halfBand = false;
  std::vector<std::pair<int, int>> members;  // (n, k)
  double center = 0.0;                       // rho-plane
  double radius = 0.0;
  int multiplicity = 0;                      // expected winding count
};

std::vector<WeightGroup> cluster_groups(const EigenvalueTable& table,
                                        const AsymptoticConstants& constants, int n);

struct WeightQuadratureOptions {
  IntegratorConfig integ{};
  int startNodes = 64;
  int maxNodes = 4096;  // 2^12
  double tol = 1e-8;    // relative node-doubling criterion
};

/// alpha = -(1/2 pi i) contour integral of M(lambda) d lambda, evaluated in
/// the rho plane (d lambda = 2 rho d rho) by circle-trapezoid quadrature with
/// node doubling. The winding count over the final node set must match the
/// group multiplicity.
Matrix weight_sum(const SelfAdjointProblem& spec, const WeightGroup& group,
                  const WeightQuadratureOptions& opts = {});

struct BandWeights {
  int n = 0;
  std::vector<std::pair<int, Matrix>> perCluster;  // (clusterId, alpha_n^(s))
  Matrix bandI, bandII;                            // alpha_n^I, alpha_n^II
};

struct WeightSums {
  std::vector<BandWeights> bands;
  const BandWeights& at(int n) const;
};

/// Group sums for every band in [nMin, nMax]; band sums are assembled from
/// the same cluster integrals.
WeightSums weight_sums(const SelfAdjointProblem& spec, const EigenvalueTable& table,
                       const AsymptoticConstants& constants, int nMin, int nMax,
                       const WeightQuadratureOptions& opts = {}, int workers = 0);

/// Deviation sequence with its log-log least-squares slope. Values at or
/// below the reporting floor carry no slope information (they sit at the
/// numerical noise of the quadrature); the fit skips them and `belowFloor`
/// marks sequences that never rise above it.
struct SeriesDiagnostic {
  std::vector<int> n;
  std::vector<double> value;
  double floor = 0.0;
  double slope = 0.0;
  int pointsUsed = 0;
  bool belowFloor = false;
  double l2Tail = 0.0;  // (P(N) - P(N/2)) / P(N) of the squared partial sums
  double maxValue = 0.0;
};

/// Assembles a SeriesDiagnostic (slope fit + l2 plateau) from raw values.
SeriesDiagnostic make_series(std::vector<int> n, std::vector<double> value, double floor);

struct DeviationReport {
  std::vector<std::pair<int, SeriesDiagnostic>> perCluster;  // clusterId -> d_n^(s)
  SeriesDiagnostic bandI;   // n * ||(pi/(2(n-1/2)^2)) alpha_n^I - T||
  SeriesDiagnostic bandII;  // n * ||(pi/(2 n^2)) alpha_n^II - Tperp||
};

inline constexpr double kClusterDeviationFloor = 1e-8;
inline constexpr double kBandDeviationFloor = 1e-6;

/// T/Tperp must be passed in the coordinates the sums were computed in.
DeviationReport weight_asymptotics_check(const WeightSums& sums,
                                         const AsymptoticConstants& constants, const Matrix& T,
                                         const Matrix& Tperp,
                                         const std::vector<Matrix>* AmatsOverride = nullptr);

/// Constants re-estimated from spectral data: z from remainder-corrected rho
/// fits, Ahat from scaled group sums (two-point Richardson in 1/n).
struct DataConstants {
  std::vector<Cluster> clusters;
  std::vector<double> zHat;    // per cluster
  std::vector<Matrix> aHat;    // per cluster
};

/// When the sums were computed in non-canonical coordinates, pass the
/// canonicalizing unitary so Ahat lands in the frame of the omega blocks.
DataConstants estimate_constants_from_data(const EigenvalueTable& table, const WeightSums& sums,
                                           const AsymptoticConstants& constants,
                                           const Matrix* toCanonical = nullptr);

struct ReconstructionResult {
  Matrix halfBlock;  // estimate of omega11 - h
  Matrix intBlock;   // estimate of omega22
};

/// sum_s zHat_s AHat^(s) split into its diagonal blocks. Throws when the data
/// clusters do not line up with `reference`.
ReconstructionResult reconstruct_blocks(const DataConstants& data,
                                        const AsymptoticConstants& reference);

}  // namespace msl
