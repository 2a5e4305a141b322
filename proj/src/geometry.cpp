#include "delib/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "delib/errors.hpp"

namespace delib {

namespace {

constexpr std::size_t kHullIterationCap = 10'000;
constexpr std::size_t kEllipsoidIterationCap = 60'000;
constexpr double kTargetGap = 1e-10;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "points of dimension " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
}

void require_points(std::span<const Point> pts, const Point& ref, const char* what) {
  if (pts.empty()) throw Error(ErrorKind::usage, std::string(what) + " must be non-empty");
  for (const auto& p : pts) require_same_dim(p, ref);
}

// Solves the (k+1)x(k+1) KKT system of min |sum mu_i q_i|^2 s.t. sum mu = 1.
std::vector<double> affine_minimizer(const std::vector<std::vector<double>>& q,
                                     const std::vector<std::size_t>& active,
                                     double ridge) {
  const std::size_t k = active.size();
  const std::size_t n = k + 1;
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = dot(q[active[i]], q[active[j]]);
    a[i][i] += ridge;
    a[i][k] = 1.0;
    a[k][i] = 1.0;
  }
  a[k][n] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    const double d = a[col][col];
    if (d == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> mu(k);
  for (std::size_t i = 0; i < k; ++i) mu[i] = a[i][i] != 0.0 ? a[i][n] / a[i][i] : 0.0;
  return mu;
}

struct MaxPiece {
  double value;
  std::size_t index;
};

MaxPiece worst_slack(std::span<const Point> agents, std::span<const double> radii,
                     std::span<const double> p) {
  MaxPiece best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < agents.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double t = p[k] - agents[i].coords[k];
      s += t * t;
    }
    const double v = std::sqrt(s) - radii[i];
    if (v > best.value) best = {v, i};
  }
  return best;
}

}  // namespace

Metric Metric::euclidean(std::size_t dimension) {
  if (dimension == 0 || dimension > kMaxDimension) {
    throw Error(ErrorKind::validation,
                "euclidean dimension must be in [1, " + std::to_string(kMaxDimension) + "]",
                "space.dimension", "dimension");
  }
  Metric m;
  m.dimension_ = dimension;
  return m;
}

Metric Metric::explicit_matrix(std::vector<std::string> nodes,
                               std::vector<std::vector<double>> matrix) {
  const std::size_t n = nodes.size();
  if (n == 0) throw Error(ErrorKind::validation, "no points", "space.points", "non_empty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (nodes[i] == nodes[j])
        throw Error(ErrorKind::validation, "duplicate point id '" + nodes[i] + "'",
                    "space.points", "unique_ids");
  if (matrix.size() != n)
    throw Error(ErrorKind::validation, "matrix must be square of size " + std::to_string(n),
                "space.matrix", "square");
  for (const auto& row : matrix)
    if (row.size() != n)
      throw Error(ErrorKind::validation, "matrix must be square of size " + std::to_string(n),
                  "space.matrix", "square");

  auto at = [&](std::size_t i, std::size_t j) {
    return "(" + nodes[i] + ", " + nodes[j] + ")";
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0)
      throw Error(ErrorKind::validation, "non-zero diagonal at " + at(i, i), "space.matrix",
                  "zero_diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(matrix[i][j]))
        throw Error(ErrorKind::validation, "non-finite entry at " + at(i, j), "space.matrix",
                    "finite");
      if (matrix[i][j] != matrix[j][i])
        throw Error(ErrorKind::validation, "asymmetric entry at " + at(i, j), "space.matrix",
                    "symmetry");
      if (i != j && !(matrix[i][j] > 0.0))
        throw Error(ErrorKind::validation, "non-positive distance at " + at(i, j),
                    "space.matrix", "positivity");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double lhs = matrix[i][k];
        const double rhs = matrix[i][j] + matrix[j][k];
        if (lhs > rhs * (1.0 + 1e-12))
          throw Error(ErrorKind::validation,
                      "triangle inequality fails for " + nodes[i] + ", " + nodes[j] + ", " +
                          nodes[k],
                      "space.matrix", "triangle_inequality");
      }

  Metric m;
  m.nodes_ = std::move(nodes);
  m.matrix_ = std::move(matrix);
  return m;
}

std::optional<NodeRef> Metric::find_node(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == name) return NodeRef{i};
  return std::nullopt;
}

double Metric::node_distance(NodeRef a, NodeRef b) const {
  if (a.index >= nodes_.size() || b.index >= nodes_.size())
    throw Error(ErrorKind::unknown_id, "point index out of range");
  return matrix_[a.index][b.index];
}

double distance(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double t = a.coords[i] - b.coords[i];
    s += t * t;
  }
  return std::sqrt(s);
}

double distance(const Location& a, const Location& b, const Metric& metric) {
  if (metric.is_euclidean()) {
    const auto* pa = std::get_if<Point>(&a);
    const auto* pb = std::get_if<Point>(&b);
    if (!pa || !pb) throw Error(ErrorKind::unknown_id, "named point used with a euclidean metric");
    if (pa->dim() != metric.dimension() || pb->dim() != metric.dimension())
      throw Error(ErrorKind::dimension_mismatch,
                  "expected dimension " + std::to_string(metric.dimension()));
    return distance(*pa, *pb);
  }
  const auto* na = std::get_if<NodeRef>(&a);
  const auto* nb = std::get_if<NodeRef>(&b);
  if (!na || !nb) throw Error(ErrorKind::unknown_id, "coordinates used with an explicit metric");
  return metric.node_distance(*na, *nb);
}

bool approves(const Location& agent, const Location& proposal, const Location& status_quo,
              const Metric& metric) {
  return distance(agent, proposal, metric) < distance(agent, status_quo, metric);
}

HullProjection nearest_point_in_hull(const Point& target, std::span<const Point> generators) {
  require_points(generators, target, "generators");
  const std::size_t d = target.dim();
  const std::size_t m = generators.size();

  std::vector<std::vector<double>> q(m, std::vector<double>(d));
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < d; ++k) q[i][k] = generators[i].coords[k] - target.coords[k];
    scale = std::max(scale, dot(q[i], q[i]));
  }

  std::size_t start = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (dot(q[i], q[i]) < dot(q[start], q[start])) start = i;

  std::vector<std::size_t> active{start};
  std::vector<double> weight{1.0};
  std::vector<double> x = q[start];
  const double eps = 1e-15 * std::max(scale, 1e-300);
  const double ridge = 1e-14 * scale;

  auto combine = [&] {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t k = 0; k < d; ++k) x[k] += weight[i] * q[active[i]][k];
  };

  std::size_t iterations = 0;
  for (;;) {
    if (++iterations > kHullIterationCap)
      throw Error(ErrorKind::solver, "nearest_point_in_hull: iteration cap reached");
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double v = dot(x, q[i]);
      if (v < best) best = v, j = i;
    }
    if (dot(x, x) - best <= eps) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    weight.push_back(0.0);

    for (;;) {
      if (++iterations > kHullIterationCap)
        throw Error(ErrorKind::solver, "nearest_point_in_hull: iteration cap reached");
      const auto mu = affine_minimizer(q, active, ridge);
      const bool interior = std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-14; });
      if (interior) {
        weight = mu;
        combine();
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] <= 1e-14 && weight[i] - mu[i] > 0.0)
          theta = std::min(theta, weight[i] / (weight[i] - mu[i]));
      for (std::size_t i = 0; i < mu.size(); ++i)
        weight[i] = (1.0 - theta) * weight[i] + theta * mu[i];
      std::vector<std::size_t> kept;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < active.size(); ++i)
        if (weight[i] > 1e-14) kept.push_back(active[i]), kept_w.push_back(weight[i]);
      if (kept.empty()) {
        // Degenerate step; keep the newest generator alone.
        kept.push_back(active.back());
        kept_w.push_back(1.0);
      }
      const double total = std::accumulate(kept_w.begin(), kept_w.end(), 0.0);
      for (auto& w : kept_w) w /= total;
      active = std::move(kept);
      weight = std::move(kept_w);
      combine();
      if (active.size() == 1) break;
    }
  }

  const double dist = std::sqrt(dot(x, x));
  HullProjection out;
  if (dist <= 1e-12 * (1.0 + std::sqrt(scale))) {
    out.point = target;
    out.distance = 0.0;
    return out;
  }
  out.point.coords.resize(d);
  for (std::size_t k = 0; k < d; ++k) out.point.coords[k] = target.coords[k] + x[k];
  out.distance = dist;
  return out;
}

std::optional<Point> separated_proposal(std::span<const Point> agents, const Point& status_quo) {
  auto hull = nearest_point_in_hull(status_quo, agents);
  if (hull.distance > kApprovalMargin) return hull.point;
  return std::nullopt;
}

FeasibilityResult best_common_proposal(std::span<const Point> agents, const Point& status_quo) {
  require_points(agents, status_quo, "agents");
  const std::size_t d = status_quo.dim();
  const std::size_t n = agents.size();

  std::vector<double> radii(n);
  for (std::size_t i = 0; i < n; ++i) radii[i] = distance(agents[i], status_quo);

  FeasibilityResult result;
  result.hull_distance = nearest_point_in_hull(status_quo, agents).distance;

  // Any minimizer lies in the hull of the agents, hence in this ball.
  std::vector<double> x(d, 0.0);
  for (const auto& a : agents)
    for (std::size_t k = 0; k < d; ++k) x[k] += a.coords[k] / static_cast<double>(n);
  double radius = 0.0;
  for (const auto& a : agents) radius = std::max(radius, distance(a, Point(x)));

  std::vector<double> best_x = x;
  MaxPiece piece = worst_slack(agents, radii, x);
  double best = piece.value;
  double lower = -std::numeric_limits<double>::infinity();

  auto finish = [&](double lb) {
    result.witness = Point(best_x);
    result.margin = best;
    result.lower_bound = std::min(lb, best);
    return result;
  };

  if (radius == 0.0) return finish(best);
  radius = radius * (1.0 + 1e-9) + 1e-12;

  if (d == 1) {
    double lo = x[0] - radius;
    double hi = x[0] + radius;
    for (int it = 0; it < 300 && hi - lo > 1e-14 * (1.0 + radius); ++it) {
      const double mid = 0.5 * (lo + hi);
      const std::vector<double> pm{mid};
      const auto pc = worst_slack(agents, radii, pm);
      if (pc.value < best) best = pc.value, best_x = pm;
      const double at = agents[pc.index].coords[0];
      if (mid == at) {
        lo = hi = mid;
        break;
      }
      (mid > at ? hi : lo) = mid;
    }
    const std::vector<double> pm{0.5 * (lo + hi)};
    const auto pc = worst_slack(agents, radii, pm);
    if (pc.value < best) best = pc.value, best_x = pm;
    return finish(pc.value - (hi - lo));
  }

  // Central-cut ellipsoid method in factored form: E = {x + B u : |u| <= 1},
  // so the shape matrix B B^T stays positive semidefinite under rounding.
  std::vector<std::vector<double>> B(d, std::vector<double>(d, 0.0));
  for (std::size_t k = 0; k < d; ++k) B[k][k] = radius;
  const double nd = static_cast<double>(d);
  const double scale_b = nd / std::sqrt(nd * nd - 1.0);
  const double shrink = 1.0 - std::sqrt((nd - 1.0) / (nd + 1.0));
  std::vector<double> g(d), xi(d), bxi(d);

  for (std::size_t it = 0; it < kEllipsoidIterationCap; ++it) {
    piece = worst_slack(agents, radii, x);
    if (piece.value < best) best = piece.value, best_x = x;
    const auto& v = agents[piece.index].coords;
    double norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      g[k] = x[k] - v[k];
      norm += g[k] * g[k];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return finish(piece.value);  // zero subgradient: optimal
    for (auto& gk : g) gk /= norm;
    // xi = B^T g
    for (std::size_t c = 0; c < d; ++c) {
      xi[c] = 0.0;
      for (std::size_t r = 0; r < d; ++r) xi[c] += B[r][c] * g[r];
    }
    const double width = std::sqrt(dot(xi, xi));
    if (!(width > 0.0)) return finish(piece.value);
    lower = std::max(lower, piece.value - width);
    if (best - lower <= kTargetGap) return finish(lower);
    for (auto& c : xi) c /= width;
    for (std::size_t r = 0; r < d; ++r) bxi[r] = dot(B[r], xi);
    for (std::size_t k = 0; k < d; ++k) x[k] -= bxi[k] / (nd + 1.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) B[r][c] = scale_b * (B[r][c] - shrink * bxi[r] * xi[c]);
  }
  if (best - lower <= kFeasibilityTolerance) return finish(lower);
  throw Error(ErrorKind::solver, "best_common_proposal: no convergence within iteration cap");
}

std::string format_point(const Point& p) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", p.coords[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + ")";
}

}  // namespace delib
