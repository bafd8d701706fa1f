#include "msl/graphs.hpp"

#include <algorithm>
#include <cmath>

#include "msl/rootfind.hpp"

namespace msl {
namespace {

// P(z) = d/dz prod_j (z - u_j) = sum_j prod_{l != j} (z - u_l)
double poly_deriv(const std::vector<double>& u, double z) {
  double acc = 0.0;
  for (size_t j = 0; j < u.size(); ++j) {
    double prod = 1.0;
    for (size_t l = 0; l < u.size(); ++l)
      if (l != j) prod *= z - u[l];
    acc += prod;
  }
  return acc;
}

PotentialSpec merged_diagonal(const std::vector<PotentialSpec>& edges) {
  const int m = static_cast<int>(edges.size());
  bool anySampled = false, allSampled = true;
  size_t maxK = 0;
  for (const auto& e : edges) {
    bool sampled = e.kind() == PotentialSpec::Kind::Sampled;
    anySampled = anySampled || sampled;
    allSampled = allSampled && sampled;
    if (e.kind() == PotentialSpec::Kind::Fourier) maxK = std::max(maxK, e.coeffs().size());
    if (e.kind() == PotentialSpec::Kind::Constant) maxK = std::max<size_t>(maxK, 1);
  }
  if (anySampled) {
    if (!allSampled)
      throw ValidationError("star graph: cannot mix sampled and analytic edge potentials");
    const auto& grid = edges[0].abscissae();
    for (const auto& e : edges)
      if (e.abscissae() != grid)
        throw ValidationError("star graph: sampled edges must share one abscissa grid");
    std::vector<Matrix> vals(grid.size(), Matrix::Zero(m, m));
    for (int j = 0; j < m; ++j)
      for (size_t i = 0; i < grid.size(); ++i) vals[i](j, j) = edges[j].samples()[i](0, 0);
    return PotentialSpec::sampled(grid, std::move(vals));
  }
  if (maxK == 0) return PotentialSpec::zero(m);
  std::vector<Matrix> coeffs(maxK, Matrix::Zero(m, m));
  for (int j = 0; j < m; ++j) {
    const auto& e = edges[j];
    if (e.kind() == PotentialSpec::Kind::Zero) continue;
    for (size_t k = 0; k < e.coeffs().size(); ++k) coeffs[k](j, j) = e.coeffs()[k](0, 0);
  }
  if (coeffs.size() == 1) return PotentialSpec::constant(coeffs[0]);
  return PotentialSpec::fourier(std::move(coeffs));
}

}  // namespace

void validate_graph(const StarGraphSpec& g) {
  if (g.m < 2) throw ValidationError("star graph: m must be >= 2");
  if (static_cast<int>(g.edges.size()) != g.m)
    throw ValidationError("star graph: edge count must equal m");
  for (int j = 0; j < g.m; ++j) {
    if (g.edges[j].dim() != 1)
      throw ValidationError("star graph: edge " + std::to_string(j + 1) +
                            " potential must be scalar");
    if (g.edges[j].hermitianDeviation() > 1e-12)
      throw ValidationError("star graph: edge " + std::to_string(j + 1) +
                            " potential must be real-valued");
    if (!g.edges[j].gridValid())
      throw ValidationError("star graph: edge " + std::to_string(j + 1) + " grid invalid");
  }
  if (g.coupling == Coupling::DeltaPrime && g.beta != 0.0)
    throw ValidationError(
        "star graph: delta'-coupling with beta != 0 reduces to a Robin condition and is "
        "unsupported");
}

SelfAdjointProblem to_matrix_problem(const StarGraphSpec& g) {
  validate_graph(g);
  const int m = g.m;
  Matrix ones = Matrix::Constant(m, m, Complex(1.0 / m, 0.0));
  Matrix T, H;
  if (g.coupling == Coupling::Delta) {
    T = ones;
    H = (g.beta / m) * ones;
  } else {
    T = Matrix::Identity(m, m) - ones;
    H = Matrix::Zero(m, m);
  }
  return make_problem(std::move(T), std::move(H), merged_diagonal(g.edges));
}

Matrix star_graph_unitary(int m, Coupling coupling) {
  if (m < 2) throw ValidationError("star_graph_unitary: m must be >= 2");
  Eigen::VectorXd v = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  w(0) = 1.0;
  w -= v;
  w.normalize();
  Eigen::MatrixXd hh = Eigen::MatrixXd::Identity(m, m) - 2.0 * w * w.transpose();
  Matrix U(m, m);
  if (coupling == Coupling::Delta) {
    U = hh.cast<Complex>();
  } else {
    // constant vector moves to the last column so the rank-(m-1) block leads
    U.leftCols(m - 1) = hh.rightCols(m - 1).cast<Complex>();
    U.col(m - 1) = hh.col(0).cast<Complex>();
  }
  return U;
}

GraphPrediction graph_constants(const StarGraphSpec& g) {
  validate_graph(g);
  GraphPrediction pred;
  for (const auto& e : g.edges) pred.edgeMeans.push_back(e.halfIntegral()(0, 0).real());

  double mean = 0.0;
  for (double u : pred.edgeMeans) mean += u;
  mean /= g.m;
  pred.vertexZ = mean - g.beta / g.m;

  // roots of P(z): multiplicity r-1 at each r-fold edge mean, plus one simple
  // root per interlacing interval
  std::vector<double> u = pred.edgeMeans;
  std::sort(u.begin(), u.end());
  double scale = 1.0 + std::abs(u.back()) + std::abs(u.front());
  std::vector<std::pair<double, int>> distinct;
  for (double x : u) {
    if (!distinct.empty() && x - distinct.back().first <= 1e-12 * scale)
      distinct.back().second++;
    else
      distinct.push_back({x, 1});
  }
  for (const auto& [x, r] : distinct)
    for (int i = 0; i + 1 < r; ++i) pred.polyRoots.push_back(x);
  auto f = [&u](double z) { return poly_deriv(u, z); };
  for (size_t i = 0; i + 1 < distinct.size(); ++i) {
    double a = distinct[i].first, b = distinct[i + 1].first;
    double gap = b - a;
    double delta = gap * 1e-9;
    double fa = f(a + delta), fb = f(b - delta);
    for (int tries = 0; (fa == 0 || fb == 0 || (fa < 0) == (fb < 0)) && tries < 6; ++tries) {
      delta *= 32.0;
      fa = f(a + delta);
      fb = f(b - delta);
    }
    pred.polyRoots.push_back(
        detail::refine_bracket(f, a + delta, b - delta, fa, fb, 1e-14 * scale));
  }
  std::sort(pred.polyRoots.begin(), pred.polyRoots.end());
  return pred;
}

GraphReport verify_graph_theorems(const StarGraphSpec& g, int N, const LocateOptions& opts,
                                  const WeightQuadratureOptions& wopts) {
  validate_graph(g);
  const int m = g.m;
  const bool delta = g.coupling == Coupling::Delta;
  SelfAdjointProblem prob = to_matrix_problem(g);
  Matrix U = star_graph_unitary(m, g.coupling);

  // canonical coordinates via the pinned unitary; block structure is exact
  Matrix Tc = Matrix::Zero(m, m), Hc = Matrix::Zero(m, m);
  int p = delta ? 1 : m - 1;
  Tc.topLeftCorner(p, p) = Matrix::Identity(p, p);
  if (delta) Hc(0, 0) = g.beta / m;
  SelfAdjointProblem probCan = make_problem(Tc, Hc, prob.Q.conjugated(U));
  OmegaBlocks om = mean_matrix(probCan);
  AsymptoticConstants ac = asymptotic_constants(probCan, om);

  GraphReport rep;
  rep.prediction = graph_constants(g);

  // (a) the P(z) route and the omega-block route describe the same constants
  const std::vector<double>& interior = delta ? ac.zInt : ac.zHalf;
  double vertexArm = delta ? ac.zHalf[0] : ac.zInt[0];
  double dev = std::abs(rep.prediction.vertexZ - vertexArm);
  for (size_t i = 0; i < interior.size(); ++i)
    dev = std::max(dev, std::abs(interior[i] - rep.prediction.polyRoots[i]));
  rep.zAgreement = dev;
  if (dev > 1e-8)
    throw ComputationError(
        "verify_graph_theorems: polynomial route disagrees with the omega-block route by " +
        std::to_string(dev) + "; internal inconsistency");

  // (b) computed spectrum and weights against the coupling theorems
  EigenvalueTable table = locate_spectrum(prob, N, opts, ac);
  int nMin = std::min(3, N);
  WeightSums sums = weight_sums(prob, table, ac, nMin, N, wopts);

  Matrix ones = Matrix::Constant(m, m, Complex(1.0 / m, 0.0));
  Matrix tTilde = ones, tTildePerp = Matrix::Identity(m, m) - ones;

  std::vector<int> ns;
  std::vector<double> resN, resNh, vdev, odev;
  std::vector<std::vector<double>> idev(ac.clusters.size());
  for (const auto& b : sums.bands) {
    int n = b.n;
    ns.push_back(n);
    // vertex cluster / opposite band deviations, in edge coordinates
    const Cluster& vc = ac.clusterOf(delta ? 1 : m);
    double vbase = delta ? n - 0.5 : static_cast<double>(n);
    Matrix alphaV;
    for (const auto& [id, a] : b.perCluster)
      if (id == vc.id) alphaV = a;
    // the vertex cluster limit is (2 base^2/pi) T-tilde for both couplings
    vdev.push_back((kPi / (2.0 * vbase * vbase) * alphaV - tTilde).norm());
    if (delta) {
      odev.push_back(n * (kPi / (2.0 * n * n) * b.bandII - tTildePerp).norm());
    } else {
      double bh = n - 0.5;
      odev.push_back(n * (kPi / (2.0 * bh * bh) * b.bandI - tTildePerp).norm());
    }
    // half-band rho residuals in both correction forms
    double rn = 0.0, rnh = 0.0;
    for (int k = 1; k <= ac.p; ++k) {
      double rho = table.at(n, k).rho;
      double z = ac.z(k);
      rn = std::max(rn, std::abs(n * (rho - (n - 0.5) - z / (kPi * n))));
      rnh = std::max(rnh, std::abs(n * (rho - (n - 0.5) - z / (kPi * (n - 0.5)))));
    }
    resN.push_back(rn);
    resNh.push_back(rnh);
    // interior clusters against U A^(s) U^dagger
    for (size_t ci = 0; ci < ac.clusters.size(); ++ci) {
      const Cluster& c = ac.clusters[ci];
      if (c.id == vc.id) continue;
      double base = c.halfBand ? n - 0.5 : static_cast<double>(n);
      for (const auto& [id, a] : b.perCluster)
        if (id == c.id)
          idev[ci].push_back(
              (kPi / (2.0 * base * base) * a - U * ac.Amats[c.members.front() - 1] * U.adjoint())
                  .norm());
    }
  }
  rep.rhoHalfResidualN = make_series(ns, resN, 1e-9);
  rep.rhoHalfResidualNHalf = make_series(ns, resNh, 1e-9);
  rep.vertexClusterDev = make_series(ns, vdev, kClusterDeviationFloor);
  rep.oppositeBandDev = make_series(ns, odev, kBandDeviationFloor);
  for (size_t ci = 0; ci < ac.clusters.size(); ++ci)
    if (!idev[ci].empty())
      rep.interiorClusterDev.push_back(
          {ac.clusters[ci].id, make_series(ns, idev[ci], kClusterDeviationFloor)});
  return rep;
}

}  // namespace msl
