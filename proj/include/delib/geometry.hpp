#pragma once

// Metric primitives, the approval predicate, and the convex geometry used to
// synthesize proposals that a given set of agents approves jointly.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace delib {

// Slack a synthesized proposal must clear so that a later strict-approval
// check cannot flip on rounding noise.
inline constexpr double kApprovalMargin = 1e-9;
inline constexpr std::size_t kMaxDimension = 8;

struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  bool operator==(const Point&) const = default;
};

// Named point of an explicit finite metric.
struct NodeRef {
  std::size_t index = 0;
  bool operator==(const NodeRef&) const = default;
};

using Location = std::variant<Point, NodeRef>;

class Metric {
 public:
  static Metric euclidean(std::size_t dimension);
  // Validates symmetry, zero diagonal, positivity and the triangle inequality
  // over every triple; throws Error(validation) naming the clause.
  static Metric explicit_matrix(std::vector<std::string> nodes,
                                std::vector<std::vector<double>> matrix);

  bool is_euclidean() const noexcept { return nodes_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::vector<std::vector<double>>& matrix() const noexcept { return matrix_; }
  std::optional<NodeRef> find_node(std::string_view name) const;

  double node_distance(NodeRef a, NodeRef b) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> nodes_;
  std::vector<std::vector<double>> matrix_;
};

double distance(const Point& a, const Point& b);
double distance(const Location& a, const Location& b, const Metric& metric);

// Strict: a tie with the status quo is not approval.
bool approves(const Location& agent, const Location& proposal,
              const Location& status_quo, const Metric& metric);

struct HullProjection {
  Point point;
  double distance = 0.0;
};

// Nearest point to `target` in the convex hull of `generators` (Wolfe's
// minimum-norm-point method on the translated generators).
HullProjection nearest_point_in_hull(const Point& target,
                                     std::span<const Point> generators);

// The nearest hull point of `agents` to the status quo when the status quo is
// farther than kApprovalMargin from the hull. Every agent strictly prefers it
// to the status quo: rho(v,r)^2 >= rho(v,q)^2 + rho(q,r)^2.
std::optional<Point> separated_proposal(std::span<const Point> agents,
                                        const Point& status_quo);

struct FeasibilityResult {
  Point witness;
  // max over agents of rho(v, witness) - rho(v, status_quo)
  double margin = 0.0;
  // certified lower bound on the optimal margin
  double lower_bound = 0.0;
  // distance from the status quo to the hull of the agents
  double hull_distance = 0.0;

  bool feasible() const noexcept { return margin < -kApprovalMargin; }
};

inline constexpr double kFeasibilityTolerance = 1e-7;

// Minimizes max_v (rho(v,p) - rho(v,r)) over p. A margin below
// -kApprovalMargin certifies a proposal every agent approves; a lower bound at
// or above zero certifies that none exists.
FeasibilityResult best_common_proposal(std::span<const Point> agents,
                                       const Point& status_quo);

std::string format_point(const Point& p);

}  // namespace delib
