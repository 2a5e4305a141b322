#pragma once

// The five deliberation operators: enumeration against a structure and
// application. On continuous spaces merge/compromise/subsume synthesize the
// target proposal; one representative is emitted per feasible mover set.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delib/coalition.hpp"

namespace delib {

enum class TransitionKind { single_agent, follow, merge, compromise, subsume };

inline constexpr TransitionKind kAllKinds[] = {
    TransitionKind::single_agent, TransitionKind::follow, TransitionKind::merge,
    TransitionKind::compromise, TransitionKind::subsume};

std::string_view to_string(TransitionKind kind);
std::optional<TransitionKind> parse_kind(std::string_view name);

// Coalition indices refer to the structure the transition was enumerated
// from.
//
//   single_agent: movers_first = {v}, moving from `first` into `second`
//   follow:       `first` joins `second` behind second's proposal
//   merge:        first < second, everyone moves to `target`
//   compromise:   first < second, movers_* are the approvers of `target`
//   subsume:      `second` moves in full, `first` contributes movers_first
struct Transition {
  TransitionKind kind = TransitionKind::single_agent;
  std::size_t first = 0;
  std::size_t second = 0;
  Proposal target;
  std::vector<AgentIndex> movers_first;
  std::vector<AgentIndex> movers_second;

  bool operator==(const Transition&) const = default;
};

// Largest |C1 u C2| the continuous compromise search accepts.
inline constexpr std::size_t kCompromiseMemberCap = 20;

std::vector<Transition> enumerate_single_agent(const CoalitionStructure& d, const DeliberationSpace& s);
std::vector<Transition> enumerate_follow(const CoalitionStructure& d, const DeliberationSpace& s);
std::vector<Transition> enumerate_merge(const CoalitionStructure& d, const DeliberationSpace& s);
std::vector<Transition> enumerate_compromise(const CoalitionStructure& d, const DeliberationSpace& s);
std::vector<Transition> enumerate_subsume(const CoalitionStructure& d, const DeliberationSpace& s);

std::vector<Transition> enumerate(TransitionKind kind, const CoalitionStructure& d,
                                  const DeliberationSpace& s);

// Re-checks the transition against `d` (throws Error(stale_transition) when it
// no longer applies) and returns the successor structure. Untouched coalitions
// keep their order, shrunk sources stay in place, empty ones are dropped, and
// a newly formed coalition is appended.
CoalitionStructure apply(const CoalitionStructure& d, const Transition& t, const DeliberationSpace& s);

// Potential change a transition must produce, when the kind fixes one:
// single_agent 2(y-x)+2, follow/merge 2|C1||C2|, subsume 2k(|C2|-|C1|+k).
std::optional<std::int64_t> expected_potential_gain(const CoalitionStructure& d, const Transition& t);

std::string describe(const Transition& t, const CoalitionStructure& d, const DeliberationSpace& s);

}  // namespace delib
