#include "msl/rootfind.hpp"

#include <cmath>
#include <map>

namespace msl::detail {

double refine_bracket(const std::function<double(double)>& f, double a, double b, double fa,
                      double fb, double xtol, int maxIter) {
  if (!(fa == 0.0 || fb == 0.0 || (fa < 0) != (fb < 0)))
    throw ComputationError("refine_bracket: endpoints do not bracket a sign change");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double x = a;
  for (int it = 0; it < maxIter; ++it) {
    if (b - a <= xtol) break;
    // secant proposal, clipped into the bracket interior; bisection fallback
    double xs = b - fb * (b - a) / (fb - fa);
    double margin = 0.1 * (b - a);
    if (!(xs > a + 0.01 * margin && xs < b - 0.01 * margin) || it % 3 == 2)
      xs = 0.5 * (a + b);
    x = xs;
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0) == (fa < 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  return 0.5 * (a + b);
}

WindingResult winding_circle(const std::function<Complex(Complex)>& g, Complex center,
                             double radius, int minNodes, int maxEvals) {
  WindingResult res;
  std::map<double, Complex> vals;  // theta -> g
  auto at = [&](double th) {
    auto it = vals.find(th);
    if (it != vals.end()) return it->second;
    Complex v = g(center + radius * Complex(std::cos(th), std::sin(th)));
    ++res.evals;
    vals.emplace(th, v);
    return v;
  };

  const double twoPi = 2.0 * kPi;
  for (int i = 0; i <= minNodes; ++i) at(twoPi * i / minNodes);

  double total = 0.0;
  // stack of segments to resolve
  std::vector<std::pair<double, double>> segs;
  for (int i = 0; i < minNodes; ++i) segs.emplace_back(twoPi * i / minNodes, twoPi * (i + 1) / minNodes);
  while (!segs.empty()) {
    auto [t0, t1] = segs.back();
    segs.pop_back();
    Complex g0 = at(t0), g1 = at(t1);
    if (std::abs(g0) == 0.0 || std::abs(g1) == 0.0) return res;  // node on a zero: not ok
    double dphi = std::arg(g1 / g0);
    if (std::abs(dphi) < kPi / 2 && t1 - t0 < twoPi / minNodes + 1e-15) {
      total += dphi;
    } else if (res.evals < maxEvals && t1 - t0 > 1e-9) {
      double tm = 0.5 * (t0 + t1);
      at(tm);
      segs.emplace_back(t0, tm);
      segs.emplace_back(tm, t1);
    } else {
      return res;  // unresolved
    }
  }
  double w = total / twoPi;
  res.count = static_cast<int>(std::lround(w));
  res.residual = std::abs(w - res.count);
  res.ok = res.residual < 0.1;
  res.radiusUsed = radius;
  return res;
}

WindingResult winding_circle_robust(const std::function<Complex(Complex)>& g, Complex center,
                                    double radius, int minNodes, double maxNudge) {
  const double steps[] = {0.0, 0.45, -0.45, 1.0, -1.0};
  WindingResult last;
  for (double s : steps) {
    last = winding_circle(g, center, radius * (1.0 + s * maxNudge), minNodes);
    if (last.ok) return last;
  }
  throw ComputationError("winding_circle: phase failed to resolve to an integer (residual " +
                         std::to_string(last.residual) + ")");
}

double vfit_min(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a), fb = f(b);
  // ternary search: f unimodal on a V
  for (int it = 0; it < 80 && (b - a) > 1e-8 * (1.0 + std::abs(a)); ++it) {
    double x1 = a + (b - a) / 3.0, x2 = b - (b - a) / 3.0;
    double f1 = f(x1), f2 = f(x2);
    if (f1 < f2) {
      b = x2;
      fb = f2;
    } else {
      a = x1;
      fa = f1;
    }
  }
  (void)fa;
  (void)fb;
  double mid = 0.5 * (a + b);
  // flank fit: sample both sides at offsets large enough to sit on the linear
  // slopes, intersect the two lines
  double w = std::max(1e-6, 4.0 * (b - a));
  double xl1 = mid - w, xl2 = mid - 2.0 * w, xr1 = mid + w, xr2 = mid + 2.0 * w;
  double fl1 = f(xl1), fl2 = f(xl2), fr1 = f(xr1), fr2 = f(xr2);
  double sl = (fl1 - fl2) / (xl1 - xl2);  // negative slope on the left flank
  double sr = (fr2 - fr1) / (xr2 - xr1);  // positive slope on the right flank
  if (sl < 0 && sr > 0) {
    // lines: y = fl1 + sl (x - xl1), y = fr1 + sr (x - xr1)
    double x = (fr1 - fl1 + sl * xl1 - sr * xr1) / (sl - sr);
    if (x > mid - 2.0 * w && x < mid + 2.0 * w) return x;
  }
  return mid;
}

}  // namespace msl::detail
