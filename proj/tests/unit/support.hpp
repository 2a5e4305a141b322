#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the solvers under test.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "delib/engine.hpp"

namespace testsupport {

using delib::Point;

inline double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double margin_at(const std::vector<Point>& agents, const Point& r, const Point& p) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& v : agents) worst = std::max(worst, dist(v, p) - dist(v, r));
  return worst;
}

struct GridResult {
  double best = std::numeric_limits<double>::infinity();
  // f is 1-Lipschitz, so the true minimum is at least best - slack
  double slack = 0.0;
};

// Minimum of max_v (|p-v| - |r-v|) over a regular grid on the agents'
// bounding box (which contains the minimizer).
inline GridResult grid_margin(const std::vector<Point>& agents, const Point& r, std::size_t per_axis) {
  const std::size_t d = r.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const auto& v : agents)
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  GridResult out;
  double diag = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double h = (hi[i] - lo[i]) / static_cast<double>(per_axis - 1);
    diag += h * h;
  }
  out.slack = std::sqrt(diag) / 2.0;
  std::vector<std::size_t> idx(d, 0);
  Point p{std::vector<double>(d, 0.0)};
  while (true) {
    for (std::size_t i = 0; i < d; ++i)
      p.coords[i] = per_axis == 1 ? lo[i] : lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx[i]) / (per_axis - 1);
    out.best = std::min(out.best, margin_at(agents, r, p));
    std::size_t k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

// Exact 1D oracle: open intervals (v - R, v + R); the largest number
// containing a common point.
inline std::size_t interval_max_support(const std::vector<double>& agents, double r) {
  std::vector<std::pair<double, double>> iv;
  for (double v : agents) {
    const double R = std::abs(v - r);
    if (R > 0) iv.emplace_back(v - R, v + R);
  }
  std::vector<double> ends;
  for (auto [a, b] : iv) {
    ends.push_back(a);
    ends.push_back(b);
  }
  std::sort(ends.begin(), ends.end());
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    if (ends[i] == ends[i + 1]) continue;
    const double mid = (ends[i] + ends[i + 1]) / 2;
    std::size_t c = 0;
    for (auto [a, b] : iv)
      if (a < mid && mid < b) ++c;
    best = std::max(best, c);
  }
  return best;
}

inline Point random_point(delib::Rng& rng, std::size_t d, double range) {
  Point p{std::vector<double>(d)};
  for (auto& c : p.coords) c = (2.0 * rng.unit() - 1.0) * range;
  return p;
}

}  // namespace testsupport
