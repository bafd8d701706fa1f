#include "msl/weights.hpp"

#include <algorithm>
#include <cmath>

#include "msl/parallel.hpp"
#include "msl/rootfind.hpp"

namespace msl {
namespace {

double band_base(const WeightGroup& g) { return g.halfBand ? g.n - 0.5 : static_cast<double>(g.n); }

// least-squares slope of log(value) vs log(n), restricted to value > floor
void fit_series(SeriesDiagnostic& s) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int np = 0;
  s.maxValue = 0.0;
  for (size_t i = 0; i < s.n.size(); ++i) {
    s.maxValue = std::max(s.maxValue, s.value[i]);
    if (s.value[i] <= s.floor) continue;
    double x = std::log(static_cast<double>(s.n[i]));
    double y = std::log(s.value[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++np;
  }
  s.pointsUsed = np;
  s.belowFloor = np < 6;
  s.slope = s.belowFloor ? 0.0 : (np * sxy - sx * sy) / (np * sxx - sx * sx);

  // l2 plateau of the squared partial sums
  std::vector<double> partial;
  double acc = 0.0;
  for (double v : s.value) {
    acc += v * v;
    partial.push_back(acc);
  }
  if (!partial.empty() && partial.back() > 0) {
    double half = partial[partial.size() / 2 - (partial.size() >= 2 ? 1 : 0)];
    s.l2Tail = (partial.back() - half) / partial.back();
  }
}

}  // namespace

SeriesDiagnostic make_series(std::vector<int> n, std::vector<double> value, double floor) {
  SeriesDiagnostic s;
  s.n = std::move(n);
  s.value = std::move(value);
  s.floor = floor;
  fit_series(s);
  return s;
}

std::vector<WeightGroup> cluster_groups(const EigenvalueTable& table,
                                        const AsymptoticConstants& constants, int n) {
  if (n < 1 || n > table.maxN) throw ValidationError("cluster_groups: band outside table range");
  std::vector<WeightGroup> groups;
  for (const auto& c : constants.clusters) {
    WeightGroup g;
    g.n = n;
    g.clusterId = c.id;
    g.halfBand = c.halfBand;
    for (int k : c.members) g.members.push_back({n, k});
    g.multiplicity = c.size();
    double base = band_base(g);
    g.center = base + c.z / (kPi * base);
    groups.push_back(g);
  }
  // radius: min(1/4, half gap to the nearest other contour center), floored by
  // ten times the spread of the member eigenvalues
  for (auto& g : groups) {
    double gap = 1e300;
    for (const auto& other : groups)
      if (other.clusterId != g.clusterId)
        gap = std::min(gap, std::abs(other.center - g.center));
    // adjacent bands contribute centers too
    for (const auto& c : constants.clusters) {
      for (int dn : {-1, 1}) {
        int nn = g.n + dn;
        if (nn < 1) continue;
        double base = c.halfBand ? nn - 0.5 : static_cast<double>(nn);
        gap = std::min(gap, std::abs(base + c.z / (kPi * base) - g.center));
      }
    }
    double spread = 0.0;
    double radius = std::min(0.25, 0.5 * gap);
    for (auto [nn, kk] : g.members) {
      const auto& e = table.at(nn, kk);
      spread = std::max(spread, std::abs(e.rho - g.center));
    }
    radius = std::max(radius, 10.0 * spread);
    g.radius = radius;
    for (auto [nn, kk] : g.members) {
      const auto& e = table.at(nn, kk);
      if (std::abs(e.rho - g.center) > 0.9 * radius)
        throw ComputationError("cluster_groups: eigenvalue (" + std::to_string(nn) + "," +
                               std::to_string(kk) + ") falls outside its cluster contour");
    }
  }
  // contours of one band must stay disjoint
  for (size_t i = 0; i < groups.size(); ++i)
    for (size_t j = i + 1; j < groups.size(); ++j)
      if (std::abs(groups[i].center - groups[j].center) <
          groups[i].radius + groups[j].radius)
        throw ComputationError(
            "cluster_groups: overlapping contours in band " + std::to_string(n) +
            "; increase n or set the radius manually");
  return groups;
}

Matrix weight_sum(const SelfAdjointProblem& spec, const WeightGroup& group,
                  const WeightQuadratureOptions& opts) {
  const int m = spec.m;
  const double r = group.radius;
  if (!(r > 0)) throw ValidationError("weight_sum: group radius must be positive");

  // f(theta) = M(rho^2) * 2 rho * (rho - c), accumulated so that
  // alpha = -(1/K) sum f; nodes are reused across doublings
  std::vector<Complex> detVals;   // balanced determinant per node, for winding
  std::vector<Matrix> fVals;
  std::vector<double> thetas;

  auto eval_node = [&](double theta) {
    Complex rho = group.center + r * Complex(std::cos(theta), std::sin(theta));
    detail::CharSample cs = detail::char_sample_rho(spec, rho, opts.integ);
    if (!(cs.sigmaMin > 0) || cs.sigmaMax / cs.sigmaMin > kNearPoleCondition)
      throw ComputationError(
          "weight_sum: near-pole condition failure on the contour; adjust the radius");
    Matrix M = detail::weyl_from_sample(cs);
    return std::make_pair(cs.detBal, Matrix((M * (2.0 * rho)) * (rho - group.center)));
  };

  int K = opts.startNodes;
  for (int i = 0; i < K; ++i) {
    double th = 2.0 * kPi * i / K;
    thetas.push_back(th);
    auto [d, f] = eval_node(th);
    detVals.push_back(d);
    fVals.push_back(f);
  }
  auto alpha_of = [&](int nodes) {
    Matrix acc = Matrix::Zero(m, m);
    int stride = static_cast<int>(thetas.size()) / nodes;
    for (int i = 0; i < nodes; ++i) acc += fVals[static_cast<size_t>(i) * stride];
    return Matrix(-acc / nodes);
  };

  Matrix alphaPrev = alpha_of(K);
  Matrix alpha = alphaPrev;
  bool converged = false;
  while (!converged) {
    if (2 * K > opts.maxNodes)
      throw ComputationError("weight_sum: quadrature did not converge within " +
                             std::to_string(opts.maxNodes) + " nodes");
    // interleave the new odd nodes
    std::vector<double> nth;
    std::vector<Complex> ndet;
    std::vector<Matrix> nf;
    for (int i = 0; i < K; ++i) {
      nth.push_back(thetas[i]);
      ndet.push_back(detVals[i]);
      nf.push_back(fVals[i]);
      double th = 2.0 * kPi * (2 * i + 1) / (2 * K);
      auto [d, f] = eval_node(th);
      nth.push_back(th);
      ndet.push_back(d);
      nf.push_back(f);
    }
    thetas.swap(nth);
    detVals.swap(ndet);
    fVals.swap(nf);
    K *= 2;
    alphaPrev = alpha;
    alpha = alpha_of(K);
    double scale = 1.0 + alpha.norm();
    converged = (alpha - alphaPrev).norm() < opts.tol * scale &&
                hermitian_deviation(alpha) < opts.tol * scale;
  }

  // the quadrature nodes double as the winding check of the contour
  double totalArg = 0.0;
  bool argOk = true;
  for (int i = 0; i < K; ++i) {
    Complex g0 = detVals[i], g1 = detVals[(i + 1) % K];
    double dphi = std::arg(g1 / g0);
    argOk = argOk && std::abs(dphi) < kPi / 2;
    totalArg += dphi;
  }
  int wind = static_cast<int>(std::lround(totalArg / (2.0 * kPi)));
  if (!argOk || wind != group.multiplicity)
    throw ComputationError("weight_sum: contour winding " + std::to_string(wind) +
                           " does not match the group multiplicity " +
                           std::to_string(group.multiplicity));
  return alpha;
}

const BandWeights& WeightSums::at(int n) const {
  for (const auto& b : bands)
    if (b.n == n) return b;
  throw ComputationError("WeightSums::at: band " + std::to_string(n) + " absent");
}

WeightSums weight_sums(const SelfAdjointProblem& spec, const EigenvalueTable& table,
                       const AsymptoticConstants& constants, int nMin, int nMax,
                       const WeightQuadratureOptions& opts, int workers) {
  if (nMin < 1 || nMax > table.maxN || nMin > nMax)
    throw ValidationError("weight_sums: band range outside table");
  WeightSums ws;
  ws.bands.resize(nMax - nMin + 1);
  detail::parallel_for(nMax - nMin + 1, workers, [&](int i) {
    int n = nMin + i;
    BandWeights bw;
    bw.n = n;
    bw.bandI = Matrix::Zero(spec.m, spec.m);
    bw.bandII = Matrix::Zero(spec.m, spec.m);
    for (const auto& g : cluster_groups(table, constants, n)) {
      Matrix a = weight_sum(spec, g, opts);
      if (g.halfBand)
        bw.bandI += a;
      else
        bw.bandII += a;
      bw.perCluster.push_back({g.clusterId, std::move(a)});
    }
    ws.bands[i] = std::move(bw);
  });
  return ws;
}

DeviationReport weight_asymptotics_check(const WeightSums& sums,
                                         const AsymptoticConstants& constants, const Matrix& T,
                                         const Matrix& Tperp,
                                         const std::vector<Matrix>* AmatsOverride) {
  DeviationReport rep;
  const std::vector<Matrix>& A = AmatsOverride ? *AmatsOverride : constants.Amats;

  for (const auto& c : constants.clusters) {
    SeriesDiagnostic s;
    s.floor = kClusterDeviationFloor;
    for (const auto& b : sums.bands) {
      double base = c.halfBand ? b.n - 0.5 : static_cast<double>(b.n);
      for (const auto& [id, alpha] : b.perCluster) {
        if (id != c.id) continue;
        s.n.push_back(b.n);
        s.value.push_back((kPi / (2.0 * base * base) * alpha - A[c.members.front() - 1]).norm());
      }
    }
    fit_series(s);
    rep.perCluster.push_back({c.id, std::move(s)});
  }

  rep.bandI.floor = kBandDeviationFloor;
  rep.bandII.floor = kBandDeviationFloor;
  for (const auto& b : sums.bands) {
    double baseH = b.n - 0.5;
    rep.bandI.n.push_back(b.n);
    rep.bandI.value.push_back(b.n * (kPi / (2.0 * baseH * baseH) * b.bandI - T).norm());
    rep.bandII.n.push_back(b.n);
    rep.bandII.value.push_back(
        b.n * (kPi / (2.0 * b.n * b.n) * b.bandII - Tperp).norm());
  }
  fit_series(rep.bandI);
  fit_series(rep.bandII);
  return rep;
}

DataConstants estimate_constants_from_data(const EigenvalueTable& table, const WeightSums& sums,
                                           const AsymptoticConstants& constants) {
  if (sums.bands.empty()) throw ValidationError("estimate_constants_from_data: no bands");
  DataConstants dc;
  dc.clusters = constants.clusters;

  const BandWeights& big = sums.bands.back();
  int nBig = big.n;
  const BandWeights* half = nullptr;
  for (const auto& b : sums.bands)
    if (b.n == nBig / 2) half = &b;

  for (const auto& c : constants.clusters) {
    // z from the remainder-corrected rho fit, averaged over the cluster and
    // Richardson-extrapolated over (n, n/2) to cancel the 1/n term
    auto zfit = [&](int n) {
      double base = c.halfBand ? n - 0.5 : static_cast<double>(n);
      double acc = 0.0;
      for (int k : c.members) acc += kPi * base * (table.at(n, k).rho - base);
      return acc / c.size();
    };
    double z = half ? 2.0 * zfit(nBig) - zfit(nBig / 2) : zfit(nBig);
    dc.zHat.push_back(z);

    auto ahat = [&](const BandWeights& b) {
      double base = c.halfBand ? b.n - 0.5 : static_cast<double>(b.n);
      for (const auto& [id, alpha] : b.perCluster)
        if (id == c.id) return Matrix(kPi / (2.0 * base * base) * alpha);
      throw ComputationError("estimate_constants_from_data: cluster missing from band sums");
    };
    Matrix A = ahat(big);
    if (half) A = 2.0 * A - ahat(*half);
    dc.aHat.push_back(std::move(A));
  }
  return dc;
}

ReconstructionResult reconstruct_blocks(const DataConstants& data,
                                        const AsymptoticConstants& reference) {
  if (data.clusters.size() != reference.clusters.size())
    throw ValidationError("reconstruct_blocks: cluster structure mismatch");
  for (size_t i = 0; i < data.clusters.size(); ++i)
    if (data.clusters[i].halfBand != reference.clusters[i].halfBand ||
        data.clusters[i].size() != reference.clusters[i].size())
      throw ValidationError("reconstruct_blocks: cluster structure mismatch");

  const int m = reference.m, p = reference.p;
  Matrix sum = Matrix::Zero(m, m);
  for (size_t i = 0; i < data.clusters.size(); ++i) sum += data.zHat[i] * data.aHat[i];
  ReconstructionResult rr;
  rr.halfBlock = sum.topLeftCorner(p, p);
  rr.intBlock = sum.bottomRightCorner(m - p, m - p);
  return rr;
}

}  // namespace msl
