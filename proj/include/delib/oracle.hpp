#pragma once

// Brute-force checks that share no enumeration code with the transitions
// module: support by double loop, transitions by trying every candidate
// successor against the definitions, and exhaustive state-graph search.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "delib/transitions.hpp"

namespace delib {

SupportReport naive_max_support(const DeliberationSpace& s);

// Order-insensitive description of a transition: symmetric kinds list the
// smaller coalition index first.
struct TransitionKey {
  TransitionKind kind;
  std::size_t first;
  std::size_t second;
  std::string target;
  std::vector<AgentIndex> movers_first;
  std::vector<AgentIndex> movers_second;

  auto operator<=>(const TransitionKey&) const = default;
};

TransitionKey key_of(const Transition& t, const DeliberationSpace& s);

// Finite proposal spaces only. Tries every (coalition pair, proposal, mover
// subset) and keeps the candidates whose successor satisfies the definition.
std::set<TransitionKey> naive_transitions(TransitionKind kind, const CoalitionStructure& d,
                                          const DeliberationSpace& s);

struct EnumerationMismatch {
  TransitionKind kind;
  std::string state;
  std::vector<TransitionKey> only_in_module;
  std::vector<TransitionKey> only_in_oracle;
};

// Compares the transitions module against the naive oracle on one structure.
std::vector<EnumerationMismatch> compare_enumerations(const CoalitionStructure& d, const DeliberationSpace& s,
                                                      const std::vector<TransitionKind>& kinds);

inline constexpr std::size_t kDefaultStateCap = 200'000;
inline constexpr std::size_t kExploreAgentCap = 8;

struct ExploreOptions {
  std::size_t state_cap = kDefaultStateCap;
  bool cross_check = false;
  std::size_t agent_cap = kExploreAgentCap;
};

struct ExploreEdge {
  std::size_t from;
  std::size_t to;
  TransitionKind kind;
};

struct ExploreReport {
  std::vector<CoalitionStructure> states;  // canonical, BFS order; states[0] is the start
  std::vector<ExploreEdge> edges;
  std::vector<std::size_t> terminals;
  std::size_t max_support = 0;
  bool all_terminals_successful = true;
  // Shortest path (as transitions, each relative to its canonical source
  // state) from the start to an unsuccessful terminal, when one exists.
  std::optional<std::vector<std::pair<std::size_t, Transition>>> unsuccessful_witness;
  bool cap_exceeded = false;
  bool acyclic = true;
  // Edges that fail to increase the potential (single_agent/follow/merge)
  // or the signature (compromise/subsume).
  std::size_t order_violations = 0;
  std::vector<EnumerationMismatch> mismatches;
};

ExploreReport explore(const DeliberationSpace& s, const CoalitionStructure& start,
                      const std::vector<TransitionKind>& kinds, const ExploreOptions& options = {});

}  // namespace delib
