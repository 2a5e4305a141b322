#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delib/space.hpp"

namespace delib {

// An agent set behind one proposal. Members are kept sorted.
struct Coalition {
  std::vector<AgentIndex> members;
  Proposal proposal;

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }
  bool operator==(const Coalition&) const = default;
};

struct CoalitionStructure {
  std::vector<Coalition> coalitions;

  std::size_t size() const noexcept { return coalitions.size(); }
  const Coalition& operator[](std::size_t i) const { return coalitions.at(i); }
  bool operator==(const CoalitionStructure&) const = default;
};

enum class ViolationClause {
  unknown_agent,
  overlap,
  uncovered,
  approval,
  status_quo_membership,
  unknown_proposal,
};

std::string_view to_string(ViolationClause clause);

struct Violation {
  ViolationClause clause;
  std::optional<std::size_t> coalition;
  std::optional<AgentIndex> agent;
  std::string detail;
};

// Every violated clause of the coalition and partition definitions. Empty
// means the structure is valid.
std::vector<Violation> validate_structure(const CoalitionStructure& d, const DeliberationSpace& s);

// A coalition backing the status quo may only hold agents with an empty
// approval set.
bool coalition_is_valid(const Coalition& c, const DeliberationSpace& s);

// lambda(D) = sum of squared coalition sizes.
std::uint64_t potential(const CoalitionStructure& d);

// Coalition sizes, non-increasing, empties dropped.
struct Signature {
  std::vector<std::size_t> sizes;
  bool operator==(const Signature&) const = default;
};

Signature signature(const CoalitionStructure& d);

// Strict order on non-increasing size sequences: either the first difference
// is smaller in `a`, or `a` is a proper prefix of `b`.
bool lex_less(const Signature& a, const Signature& b);

bool is_successful(const CoalitionStructure& d, const DeliberationSpace& s, std::size_t max_support);
bool is_successful(const CoalitionStructure& d, const DeliberationSpace& s);

std::size_t largest_coalition(const CoalitionStructure& d);

// Empties dropped, members sorted, coalitions ordered by (size desc, smallest
// member).
CoalitionStructure canonicalize(const CoalitionStructure& d);
std::string canonical_key(const CoalitionStructure& d, const DeliberationSpace& s);

std::string to_string(const Signature& sig);
std::string describe(const CoalitionStructure& d, const DeliberationSpace& s);

}  // namespace delib
