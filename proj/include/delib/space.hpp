#pragma once

// The deliberation space (X, V, r, rho): agents, proposals, status quo, metric.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delib/geometry.hpp"

namespace delib {

using AgentIndex = std::size_t;

inline constexpr std::string_view kStatusQuoId = "r";
inline constexpr std::size_t kDefaultOracleCap = 16;

struct Agent {
  std::string id;
  Location at;
};

// A proposal is named when it belongs to a finite proposal set; proposals
// synthesized on a continuous space carry an empty id and only coordinates.
struct Proposal {
  std::string id;
  Location at;

  bool operator==(const Proposal&) const = default;
};

class DeliberationSpace {
 public:
  // `proposals` == nullopt means X = R^d (requires a euclidean metric). A
  // finite list may or may not contain the status quo; it is always added
  // under id "r" at index 0.
  DeliberationSpace(Metric metric, std::vector<Agent> agents, Location status_quo,
                    std::optional<std::vector<Proposal>> proposals, std::string name = {});

  const std::string& name() const noexcept { return name_; }
  const Metric& metric() const noexcept { return metric_; }
  std::size_t dimension() const noexcept { return metric_.dimension(); }
  bool is_euclidean() const noexcept { return metric_.is_euclidean(); }
  bool is_continuous() const noexcept { return continuous_; }

  std::size_t agent_count() const noexcept { return agents_.size(); }
  const std::vector<Agent>& agents() const noexcept { return agents_; }
  const Agent& agent(AgentIndex v) const { return agents_.at(v); }
  std::optional<AgentIndex> find_agent(std::string_view id) const;
  const Point& agent_point(AgentIndex v) const;

  // Finite spaces only; index 0 is the status quo.
  const std::vector<Proposal>& proposals() const;
  std::optional<std::size_t> find_proposal(std::string_view id) const;

  const Proposal& status_quo() const noexcept { return status_quo_; }
  bool is_status_quo(const Proposal& p) const;

  double distance(const Location& a, const Location& b) const;
  // rho(v, r): radius of v's open approval ball.
  double status_quo_distance(AgentIndex v) const { return sq_distance_.at(v); }

  bool approves(AgentIndex v, const Proposal& p) const;
  // X^v non-empty. On a continuous space this is "v is not located at r".
  bool has_approvals(AgentIndex v) const { return has_approvals_.at(v); }

  // Resolves a proposal reference: an id of the finite set (or "r"), or,
  // on euclidean spaces, bare coordinates.
  Proposal resolve_proposal(std::string_view id) const;

 private:
  std::string name_;
  Metric metric_;
  std::vector<Agent> agents_;
  Proposal status_quo_;
  bool continuous_ = false;
  std::vector<Proposal> proposals_;
  std::vector<double> sq_distance_;
  std::vector<bool> has_approvals_;
  // approval_[v][x] for finite spaces
  std::vector<std::vector<bool>> approval_;
};

struct SupportReport {
  std::size_t max_support = 0;
  // finite X: all of M*, in proposal order; continuous X: one witness point;
  // empty when max_support == 0
  std::vector<Proposal> witnesses;
};

std::vector<std::string> approval_set(const DeliberationSpace& s, AgentIndex v);

std::vector<AgentIndex> supporters(const DeliberationSpace& s, std::span<const AgentIndex> members,
                                   const Proposal& p);

// Open approval balls B(v, rho(v,r)) and B(w, rho(w,r)) overlap.
bool approval_balls_meet(const DeliberationSpace& s, AgentIndex v, AgentIndex w);

// Largest subset of `candidates` jointly approving some point, searched by
// descending cardinality then lexicographic order. Returns the subset size
// and the feasibility witness (nullopt when no candidate approves anything).
struct SubsetFeasibility {
  std::size_t size = 0;
  std::vector<AgentIndex> subset;
  std::optional<Point> witness;
};
SubsetFeasibility largest_feasible_subset(const DeliberationSpace& s,
                                          std::span<const AgentIndex> candidates);

SupportReport max_support(const DeliberationSpace& s, std::size_t oracle_cap = kDefaultOracleCap);

std::string describe(const DeliberationSpace& s, const Proposal& p);

}  // namespace delib
