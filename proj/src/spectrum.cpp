#include "msl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "msl/parallel.hpp"
#include "msl/rootfind.hpp"

namespace msl {
namespace {

using detail::CharSample;

// Chart over either the real rho axis (bands) or the real lambda axis (the
// low-energy region, where rho would be imaginary).
struct Chart {
  const SelfAdjointProblem* spec;
  IntegratorConfig cfg;
  bool rhoPlane = true;

  CharSample sample(Complex x) const {
    return rhoPlane ? detail::char_sample_rho(*spec, x, cfg)
                    : detail::char_sample_lambda(*spec, x, cfg);
  }
  Complex cdet(Complex x) const {
    CharSample cs = sample(x);
    return rhoPlane ? cs.detBal : cs.detW;
  }
  std::function<Complex(Complex)> detFn() const {
    return [this](Complex x) { return cdet(x); };
  }
};

struct FoundRoot {
  double x = 0.0;  // chart coordinate
  int mult = 1;
};

struct GridPoint {
  double x;
  double det;
  double sigma;
  double sigmaMax;
};

double dist_to_others(const std::vector<FoundRoot>& roots, double x, double skip) {
  double d = 1e300;
  for (const auto& r : roots)
    if (std::abs(r.x - x) > skip) d = std::min(d, std::abs(r.x - x));
  return d;
}

int multiplicity_of(const Chart& ch, const std::vector<FoundRoot>& roots, double x,
                    double isolation) {
  double radius = std::min({0.2, isolation, 0.45 * dist_to_others(roots, x, 1e-9)});
  radius = std::max(radius, 1e-7);
  auto w = detail::winding_circle_robust(ch.detFn(), Complex(x), radius, 16);
  return w.count;
}

// Sign-change roots plus sigma-min recovery of even-multiplicity roots on
// [a, b]. `expected` < 0 disables the sigma hunt (pure bracket scan).
std::vector<FoundRoot> locate_in_interval(const Chart& ch, double a, double b, int points,
                                          int expected, double isolation) {
  points = std::max(points, 5);
  std::vector<GridPoint> grid(points);
  for (int i = 0; i < points; ++i) {
    double x = a + (b - a) * i / (points - 1);
    CharSample cs = ch.sample(Complex(x));
    Complex det = ch.rhoPlane ? cs.detBal : cs.detW;
    grid[i] = {x, det.real(), cs.sigmaMin, cs.sigmaMax};
  }

  auto fdet = [&](double x) { return ch.cdet(Complex(x)).real(); };
  auto fsig = [&](double x) { return ch.sample(Complex(x)).sigmaMin; };

  std::vector<FoundRoot> roots;
  for (int i = 0; i + 1 < points; ++i) {
    if (grid[i].det == 0.0 || (grid[i].det < 0) != (grid[i + 1].det < 0)) {
      double r = detail::refine_bracket(fdet, grid[i].x, grid[i + 1].x, grid[i].det,
                                        grid[i + 1].det, 1e-13 * (1.0 + std::abs(grid[i].x)));
      bool dup = false;
      for (const auto& other : roots) dup = dup || std::abs(other.x - r) < 1e-9;
      if (!dup) roots.push_back({r, 1});
    }
  }
  for (auto& r : roots) r.mult = multiplicity_of(ch, roots, r.x, isolation);

  auto total = [&roots] {
    int t = 0;
    for (const auto& r : roots) t += r.mult;
    return t;
  };

  // even-multiplicity zeros leave no sign change; hunt for dips of sigma_min
  double step = (b - a) / (points - 1);
  std::vector<bool> masked(points, false);
  for (int round = 0; round < 6 && expected >= 0 && total() < expected; ++round) {
    int best = -1;
    for (int i = 1; i + 1 < points; ++i) {
      if (masked[i]) continue;
      if (dist_to_others(roots, grid[i].x, -1.0) < 1.5 * step) continue;
      if (grid[i].sigma > grid[i - 1].sigma || grid[i].sigma > grid[i + 1].sigma) continue;
      if (best < 0 || grid[i].sigma < grid[best].sigma) best = i;
    }
    if (best < 0) break;
    masked[best] = true;
    double xstar = detail::vfit_min(fsig, grid[best - 1].x, grid[best + 1].x);
    if (xstar <= a || xstar >= b) continue;
    if (dist_to_others(roots, xstar, -1.0) < 1e-6) continue;
    double radius =
        std::max(1e-6, std::min({step, isolation, 0.45 * dist_to_others(roots, xstar, 1e-9)}));
    detail::WindingResult w;
    try {
      w = detail::winding_circle_robust(ch.detFn(), Complex(xstar), radius, 16);
    } catch (const ComputationError&) {
      continue;
    }
    if (w.count <= 0) continue;
    double sig = fsig(xstar);
    double sigScale = grid[best].sigmaMax + 1.0;
    if (w.count >= 2 && sig > 1e-7 * sigScale) {
      // a close pair rather than a true multiple zero: rescan finely and split
      int fine = 33;
      std::vector<FoundRoot> sub;
      double flo = xstar - w.radiusUsed, fhi = xstar + w.radiusUsed;
      double prev = fdet(flo), px = flo;
      for (int i = 1; i < fine; ++i) {
        double x = flo + (fhi - flo) * i / (fine - 1);
        double fx = fdet(x);
        if (prev == 0.0 || (prev < 0) != (fx < 0)) {
          double r = detail::refine_bracket(fdet, px, x, prev, fx, 1e-13 * (1.0 + std::abs(x)));
          sub.push_back({r, 1});
        }
        prev = fx;
        px = x;
      }
      if (static_cast<int>(sub.size()) == w.count) {
        for (auto& s : sub) roots.push_back(s);
        continue;
      }
    }
    roots.push_back({xstar, w.count});
  }

  std::sort(roots.begin(), roots.end(),
            [](const FoundRoot& l, const FoundRoot& r) { return l.x < r.x; });
  return roots;
}

// Window of one z-cluster inside a band.
struct ClusterWindow {
  double lo, hi, center;
  int expect;
};

std::vector<ClusterWindow> cluster_windows(const AsymptoticConstants& ac, int n) {
  std::vector<ClusterWindow> ws;
  std::vector<std::pair<double, int>> centers;
  for (const auto& c : ac.clusters) {
    double base = c.halfBand ? n - 0.5 : static_cast<double>(n);
    centers.push_back({base + c.z / (kPi * base), c.size()});
  }
  std::sort(centers.begin(), centers.end());
  double bandLo = n - 0.75, bandHi = n + 0.25;
  for (size_t i = 0; i < centers.size(); ++i) {
    double lo = i == 0 ? bandLo : 0.5 * (centers[i - 1].first + centers[i].first);
    double hi = i + 1 == centers.size() ? bandHi : 0.5 * (centers[i].first + centers[i + 1].first);
    // margin keeps neighbouring windows from sharing a refined root
    double margin = 0.02 * (hi - lo);
    ws.push_back({lo + margin, hi - margin, centers[i].first, centers[i].second});
  }
  return ws;
}

bool cluster_mode_usable(const std::vector<ClusterWindow>& ws, int n) {
  if (n <= 2) return false;
  for (const auto& w : ws) {
    if (w.center < n - 0.72 || w.center > n + 0.22) return false;
    if (w.center - w.lo < 0.01 || w.hi - w.center < 0.01) return false;
  }
  return true;
}

std::vector<FoundRoot> scan_band(const Chart& ch, const AsymptoticConstants& ac, int n) {
  const int m = ac.m;
  std::vector<ClusterWindow> ws = cluster_windows(ac, n);
  std::vector<FoundRoot> roots;
  if (cluster_mode_usable(ws, n)) {
    for (const auto& w : ws) {
      double halfGap = std::min(w.center - w.lo, w.hi - w.center);
      int points = std::max(9, 2 * w.expect + 7);
      auto r = locate_in_interval(ch, w.lo, w.hi, points, w.expect, halfGap);
      roots.insert(roots.end(), r.begin(), r.end());
    }
  }
  int total = 0;
  for (const auto& r : roots) total += r.mult;
  if (total != m)
    roots = locate_in_interval(ch, n - 0.75 + 1e-4, n + 0.25 - 1e-4, 256, m, 0.24);
  std::sort(roots.begin(), roots.end(),
            [](const FoundRoot& l, const FoundRoot& r) { return l.x < r.x; });
  return roots;
}

std::vector<FoundRoot> scan_low_region(const Chart& lam, double lo, double hi, int boost = 1) {
  int points = boost * std::max(48, static_cast<int>(std::ceil((hi - lo) / 0.05)));
  return locate_in_interval(lam, lo, hi, points, -1, 0.1);
}

}  // namespace

const EigenvalueEntry& EigenvalueTable::at(int n, int k) const {
  for (const auto& e : entries)
    if (e.n == n && e.k == k) return e;
  throw ComputationError("EigenvalueTable::at: no entry (" + std::to_string(n) + ", " +
                         std::to_string(k) + ")");
}

std::vector<Guess> initial_guesses(const SelfAdjointProblem& spec, int N,
                                   const AsymptoticConstants* constants) {
  if (N < 1) throw ValidationError("initial_guesses: N must be >= 1");
  std::vector<Guess> gs;
  for (int n = 1; n <= N; ++n) {
    for (int k = 1; k <= spec.m; ++k) {
      double base = k <= spec.p ? n - 0.5 : static_cast<double>(n);
      double rho = base;
      if (constants) rho += constants->z(k) / (kPi * base);
      gs.push_back({n, k, rho});
    }
  }
  return gs;
}

EigenvalueTable locate_spectrum(const SelfAdjointProblem& spec, int N, const LocateOptions& opts) {
  CanonicalForm cf = canonicalize(spec);
  AsymptoticConstants ac = asymptotic_constants(cf.problem, mean_matrix(cf.problem));
  return locate_spectrum(spec, N, opts, ac);
}

EigenvalueTable locate_spectrum(const SelfAdjointProblem& spec, int N, const LocateOptions& opts,
                                const AsymptoticConstants& constants) {
  require_valid(spec);
  if (N < 1) throw ValidationError("locate_spectrum: N must be >= 1");

  Chart rho{&spec, opts.integ, true};
  Chart lam{&spec, opts.integ, false};

  const double lam0 = 2.0 * spec.Q.supNorm() + opnorm(spec.H) + 1.0;
  const double lowLo = -lam0, lowHi = 1.0 / 16.0;

  std::vector<FoundRoot> lowRoots = scan_low_region(lam, lowLo, lowHi);
  std::vector<std::vector<FoundRoot>> bandRoots(N + 1);
  detail::parallel_for(N, opts.workers,
                       [&](int i) { bandRoots[i + 1] = scan_band(rho, constants, i + 1); });

  // completeness by the argument principle: every verification circle must
  // enclose exactly the multiplicities we refined, counted over all regions
  auto enclosed_rho = [&](double center, double radius) {
    int c = 0;
    for (const auto& r : lowRoots)
      if (r.x > 0 && std::abs(std::sqrt(r.x) - center) < radius) c += r.mult;
    for (int n = 1; n <= N; ++n)
      for (const auto& r : bandRoots[n])
        if (std::abs(r.x - center) < radius) c += r.mult;
    return c;
  };
  auto enclosed_lambda = [&](double center, double radius) {
    int c = 0;
    for (const auto& r : lowRoots)
      if (std::abs(r.x - center) < radius) c += r.mult;
    for (int n = 1; n <= N; ++n)
      for (const auto& r : bandRoots[n])
        if (std::abs(r.x * r.x - center) < radius) c += r.mult;
    return c;
  };

  if (opts.verifyBandCounts) {
    for (int n = 1; n <= N; ++n) {
      auto w = detail::winding_circle_robust(rho.detFn(), Complex(n - 0.25), 0.5, 24, 0.05);
      if (w.count != enclosed_rho(n - 0.25, w.radiusUsed)) {
        bandRoots[n] = locate_in_interval(rho, n - 0.75 + 1e-4, n + 0.25 - 1e-4, 512, w.count, 0.24);
        if (w.count != enclosed_rho(n - 0.25, w.radiusUsed))
          throw ComputationError("locate_spectrum: band " + std::to_string(n) +
                                 " winding count " + std::to_string(w.count) +
                                 " does not match the located eigenvalues (missed eigenvalue)");
      }
    }
    Complex lc(0.5 * (lowLo + lowHi), 0.0);
    auto wl = detail::winding_circle_robust(lam.detFn(), lc, 0.5 * (lowHi - lowLo), 24, 0.02);
    if (wl.count != enclosed_lambda(lc.real(), wl.radiusUsed)) {
      lowRoots = scan_low_region(lam, lowLo, lowHi, 4);
      if (wl.count != enclosed_lambda(lc.real(), wl.radiusUsed))
        throw ComputationError(
            "locate_spectrum: low-energy region winding count does not match the located "
            "eigenvalues");
    }
  }

  std::vector<std::pair<double, int>> all;  // (lambda, mult)
  for (const auto& r : lowRoots) all.push_back({r.x, r.mult});
  for (int n = 1; n <= N; ++n)
    for (const auto& r : bandRoots[n]) all.push_back({r.x * r.x, r.mult});
  std::sort(all.begin(), all.end());

  // seams between scan regions can double-report one root
  std::vector<std::pair<double, int>> uniq;
  for (const auto& e : all) {
    if (!uniq.empty() && std::abs(uniq.back().first - e.first) < 1e-8 * (1.0 + std::abs(e.first)))
      uniq.back().second = std::max(uniq.back().second, e.second);
    else
      uniq.push_back(e);
  }

  int total = 0;
  for (const auto& e : uniq) total += e.second;
  if (total != spec.m * N) {
    std::ostringstream os;
    os << "locate_spectrum: found " << total << " eigenvalues with rho <= " << N
       << " + 1/4, expected " << spec.m * N;
    throw ComputationError(os.str());
  }

  EigenvalueTable table;
  table.m = spec.m;
  table.p = spec.p;
  table.maxN = N;
  int slot = 0;
  for (const auto& e : uniq) {
    for (int j = 0; j < e.second; ++j) {
      int n = slot / spec.m + 1, k = slot % spec.m + 1;
      EigenvalueEntry entry;
      entry.n = n;
      entry.k = k;
      entry.lambda = e.first;
      entry.rho = e.first >= 0 ? std::sqrt(e.first) : -std::sqrt(-e.first);
      entry.clusterId = constants.clusterOf(k).id;
      table.entries.push_back(entry);
      ++slot;
    }
  }
  return table;
}

RemainderDiagnostics remainders(const EigenvalueTable& table, const AsymptoticConstants& ac) {
  const int N = table.maxN, m = table.m, p = table.p;
  RemainderDiagnostics rd;
  rd.kappa = RealMatrix::Zero(N, m);
  rd.partialL2 = RealMatrix::Zero(N, m);
  rd.partialL2Total = RealVector::Zero(N);
  for (const auto& e : table.entries) {
    double base = e.k <= p ? e.n - 0.5 : static_cast<double>(e.n);
    rd.kappa(e.n - 1, e.k - 1) = e.n * (e.rho - base - ac.z(e.k) / (kPi * base));
  }
  for (int n = 0; n < N; ++n) {
    for (int k = 0; k < m; ++k) {
      double prev = n > 0 ? rd.partialL2(n - 1, k) : 0.0;
      rd.partialL2(n, k) = prev + rd.kappa(n, k) * rd.kappa(n, k);
    }
    rd.partialL2Total(n) = rd.partialL2.row(n).sum();
  }
  for (int k = 0; k < m; ++k) {
    double full = rd.partialL2(N - 1, k);
    double half = N >= 2 ? rd.partialL2(N / 2 - 1, k) : 0.0;
    rd.tailRatios.push_back(full > 0 ? (full - half) / full : 0.0);
  }
  double fullT = rd.partialL2Total(N - 1);
  double halfT = N >= 2 ? rd.partialL2Total(N / 2 - 1) : 0.0;
  rd.tailRatioTotal = fullT > 0 ? (fullT - halfT) / fullT : 0.0;
  return rd;
}

}  // namespace msl
