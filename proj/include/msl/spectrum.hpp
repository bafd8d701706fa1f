#pragma once

#include "msl/canonical.hpp"
#include "msl/charfn.hpp"
#include "msl/constants.hpp"

namespace msl {

struct EigenvalueEntry {
  int n = 0;  // band index >= 1
  int k = 0;  // 1..m within the band
  double lambda = 0.0;
  double rho = 0.0;  // sqrt(lambda); sign(lambda) sqrt(|lambda|) for the rare negative entries
  int clusterId = 0;
};

/// All eigenvalues with rho <= maxN + 1/4, globally sorted nondecreasing and
/// assigned to consecutive (n, k) slots; multiple eigenvalues repeat.
struct EigenvalueTable {
  int m = 0, p = 0, maxN = 0;
  std::vector<EigenvalueEntry> entries;

  const EigenvalueEntry& at(int n, int k) const;
};

struct Guess {
  int n = 0, k = 0;
  double rho0 = 0.0;
};

/// Unperturbed guesses n - 1/2 (p-fold) and n (m-p fold), shifted by
/// z_k/(pi * base) when constants are supplied.
std::vector<Guess> initial_guesses(const SelfAdjointProblem& spec, int N,
                                   const AsymptoticConstants* constants = nullptr);

struct LocateOptions {
  IntegratorConfig integ{};
  bool verifyBandCounts = true;  // argument-principle count per band window
  int workers = 0;               // 0 = hardware concurrency
};

EigenvalueTable locate_spectrum(const SelfAdjointProblem& spec, int N,
                                const LocateOptions& opts = {});
EigenvalueTable locate_spectrum(const SelfAdjointProblem& spec, int N, const LocateOptions& opts,
                                const AsymptoticConstants& constants);

/// kappa_nk = n (rho_nk - base - z_k/(pi base)) with base = n - 1/2 for k <= p
/// and base = n for k > p; the theorem puts {kappa_nk} in l2.
struct RemainderDiagnostics {
  RealMatrix kappa;           // maxN x m
  RealMatrix partialL2;       // cumulative sums of kappa^2 per k
  RealVector partialL2Total;  // summed over k
  std::vector<double> tailRatios;  // per k: (P(N) - P(N/2)) / P(N)
  double tailRatioTotal = 0.0;
};

RemainderDiagnostics remainders(const EigenvalueTable& table, const AsymptoticConstants& constants);

/// Two problems sharing T, compared per the perturbation corollary: when the
/// block conditions hold, n (rho_nk - rhoHat_nk) stays l2-bounded and the
/// scaled weight-sum differences vanish.
struct ComparisonReport {
  double conditionHalf = 0.0;  // || T ((omega - omegaHat) - H + HHat) T ||
  double conditionInt = 0.0;   // || Tperp (int Q - int QHat) Tperp ||
  bool conditionsHold = false;
  RealMatrix scaledRhoDiff;    // maxN x m, n (rho - rhoHat)
  RealVector l2Partial;        // cumulative sums over bands of sum_k diff^2
  double tailRatio = 0.0;      // (P(N) - P(N/2)) / P(N)
  std::vector<int> weightBands;
  std::vector<double> weightDiffScaled;  // max_s ||alpha_n^(s) - alphaHat_n^(s)|| / n^2
};

ComparisonReport compare_problems(const SelfAdjointProblem& a, const SelfAdjointProblem& b, int N,
                                  const LocateOptions& opts = {});

}  // namespace msl
