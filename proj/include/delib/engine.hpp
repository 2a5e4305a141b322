#pragma once

// Maximal deliberations under a scheduling policy, random scenario
// generation, and batch experiments.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "delib/transitions.hpp"

namespace delib {

enum class Selector { uniform_random, first_enumerated };

std::string_view to_string(Selector selector);
std::optional<Selector> parse_selector(std::string_view name);

// Priority tiers of transition kinds. A lower tier is consulted only when
// every higher tier has nothing available.
struct Policy {
  std::vector<std::vector<TransitionKind>> tiers;
  Selector selector = Selector::uniform_random;
  std::uint64_t seed = 0;

  // "follow,single_agent" is one tier; "subsume>compromise" is two.
  static Policy parse(std::string_view text, Selector selector = Selector::uniform_random,
                      std::uint64_t seed = 0);
  std::string spec() const;
  std::vector<TransitionKind> kinds() const;
  bool operator==(const Policy&) const = default;
};

// Seeded generator used for every random choice: std::mt19937_64 (fully
// specified by the standard) with bounded draws by rejection sampling, so
// sequences do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi] (integers).
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

enum class Classification { successful, unsuccessful, step_cap_reached };

std::string_view to_string(Classification c);
std::optional<Classification> parse_classification(std::string_view name);

struct TraceStep {
  std::size_t index = 0;
  Transition transition;
  std::uint64_t potential = 0;
  Signature signature;
};

struct RunTrace {
  std::string scenario;
  Policy policy;
  std::size_t step_cap = 0;
  CoalitionStructure initial;
  std::uint64_t initial_potential = 0;
  Signature initial_signature;
  std::vector<TraceStep> steps;
  CoalitionStructure terminal;
  Classification classification = Classification::unsuccessful;
  std::size_t max_support = 0;
};

std::size_t default_step_cap(std::size_t agent_count);

// Runs until no allowed transition exists or `step_cap` steps were taken.
// Throws Error(invariant_breach) if a step violates the monotonicity the
// operator guarantees (potential gain, signature order, structure validity).
RunTrace run(const DeliberationSpace& s, const CoalitionStructure& initial, const Policy& policy,
             std::optional<std::size_t> step_cap = std::nullopt,
             std::optional<std::size_t> known_max_support = std::nullopt);

// Agents with a non-empty approval set start alone behind their nearest
// approved proposal (ties by proposal order; on a continuous space, their own
// location); everyone else shares one status-quo coalition.
CoalitionStructure default_initial_structure(const DeliberationSpace& s);

struct GeneratorConfig {
  bool continuous = false;
  std::size_t min_agents = 2;
  std::size_t max_agents = 8;
  std::vector<std::size_t> dimensions{1, 2, 3};
  // |X \ {r}| for finite spaces
  std::size_t min_proposals = 1;
  std::size_t max_proposals = 8;
  double coordinate_range = 5.0;
  // Coordinates are rounded to this many decimals (negative: no rounding).
  int decimals = 2;
};

struct Scenario {
  DeliberationSpace space;
  CoalitionStructure initial;
};

// Status quo at the origin; agents and proposals uniform in the box. No agent
// of a continuous scenario is placed at the status quo.
Scenario generate_scenario(const GeneratorConfig& config, std::uint64_t seed);

struct BatchRow {
  std::uint64_t seed = 0;
  std::size_t agents = 0;
  std::size_t dimension = 0;
  std::optional<std::size_t> proposals;  // nullopt: continuous
  std::string policy;
  std::size_t steps = 0;
  Classification classification = Classification::unsuccessful;
  std::size_t max_support = 0;
  std::size_t max_terminal_coalition = 0;
  bool operator==(const BatchRow&) const = default;
};

struct PolicySummary {
  std::size_t runs = 0;
  std::size_t successful = 0;
  std::size_t unsuccessful = 0;
  std::size_t cap_reached = 0;
  std::map<std::size_t, std::size_t> step_histogram;
  double success_rate() const { return runs ? static_cast<double>(successful) / runs : 0.0; }
};

struct BatchResult {
  std::vector<BatchRow> rows;
  std::map<std::string, PolicySummary> summary;
};

// One run per (seed, policy); each run seeds its policy with the scenario
// seed. Runs execute on `threads` workers (0: hardware concurrency); rows come
// back in (seed, policy) order regardless.
BatchResult batch(const GeneratorConfig& config, const std::vector<Policy>& policies,
                  std::uint64_t first_seed, std::uint64_t last_seed, unsigned threads = 0);

}  // namespace delib
