#include "delib/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "delib/errors.hpp"

namespace delib {

namespace {

bool debug_logging() {
  static const bool on = [] {
    const char* v = std::getenv("DELIB_LOG");
    return v && (std::string_view(v) == "debug" || std::string_view(v) == "trace");
  }();
  return on;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void breach(std::size_t step, const std::string& what) {
  throw Error(ErrorKind::invariant_breach, "step " + std::to_string(step) + ": " + what);
}

}  // namespace

std::string_view to_string(Selector selector) {
  return selector == Selector::uniform_random ? "uniform_random" : "first_enumerated";
}

std::optional<Selector> parse_selector(std::string_view name) {
  if (name == "uniform_random") return Selector::uniform_random;
  if (name == "first_enumerated") return Selector::first_enumerated;
  return std::nullopt;
}

Policy Policy::parse(std::string_view text, Selector selector, std::uint64_t seed) {
  Policy p;
  p.selector = selector;
  p.seed = seed;
  std::vector<TransitionKind> seen;
  for (auto tier_text : split(text, '>')) {
    std::vector<TransitionKind> tier;
    for (auto name : split(tier_text, ',')) {
      name = trim(name);
      auto kind = parse_kind(name);
      if (!kind) throw Error(ErrorKind::usage, "unknown transition kind '" + std::string(name) + "'", "policy");
      if (std::find(seen.begin(), seen.end(), *kind) != seen.end())
        throw Error(ErrorKind::usage, "duplicate transition kind '" + std::string(name) + "'", "policy");
      seen.push_back(*kind);
      tier.push_back(*kind);
    }
    p.tiers.push_back(std::move(tier));
  }
  return p;
}

std::string Policy::spec() const {
  std::string out;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    if (t) out += '>';
    for (std::size_t k = 0; k < tiers[t].size(); ++k) {
      if (k) out += ',';
      out += to_string(tiers[t][k]);
    }
  }
  return out;
}

std::vector<TransitionKind> Policy::kinds() const {
  std::vector<TransitionKind> out;
  for (const auto& tier : tiers) out.insert(out.end(), tier.begin(), tier.end());
  return out;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::usage, "empty range");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::successful: return "successful";
    case Classification::unsuccessful: return "unsuccessful";
    case Classification::step_cap_reached: return "step_cap_reached";
  }
  return "unknown";
}

std::optional<Classification> parse_classification(std::string_view name) {
  for (auto c : {Classification::successful, Classification::unsuccessful, Classification::step_cap_reached})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::size_t default_step_cap(std::size_t agent_count) {
  return std::max<std::size_t>(1, 10 * agent_count * agent_count);
}

RunTrace run(const DeliberationSpace& s, const CoalitionStructure& initial, const Policy& policy,
             std::optional<std::size_t> step_cap, std::optional<std::size_t> known_max_support) {
  if (policy.tiers.empty() || std::any_of(policy.tiers.begin(), policy.tiers.end(),
                                          [](const auto& t) { return t.empty(); }))
    throw Error(ErrorKind::usage, "policy needs at least one transition kind per tier", "policy");
  if (auto v = validate_structure(initial, s); !v.empty())
    throw Error(ErrorKind::validation, v.front().detail, "initial_structure", std::string(to_string(v.front().clause)));

  RunTrace trace;
  trace.scenario = s.name();
  trace.policy = policy;
  trace.step_cap = step_cap.value_or(default_step_cap(s.agent_count()));
  if (trace.step_cap < 1) throw Error(ErrorKind::usage, "step cap must be at least 1", "step_cap");
  trace.initial = initial;
  trace.initial_potential = potential(initial);
  trace.initial_signature = signature(initial);
  trace.max_support = known_max_support ? *known_max_support : max_support(s).max_support;

  Rng rng(policy.seed);
  CoalitionStructure current = initial;
  std::uint64_t current_potential = trace.initial_potential;
  Signature current_signature = trace.initial_signature;

  for (std::size_t step = 1;; ++step) {
    std::vector<Transition> options;
    for (const auto& tier : policy.tiers) {
      for (auto kind : tier) {
        auto found = enumerate(kind, current, s);
        options.insert(options.end(), std::make_move_iterator(found.begin()),
                       std::make_move_iterator(found.end()));
      }
      if (!options.empty()) break;
    }
    if (options.empty()) {
      trace.classification = is_successful(current, s, trace.max_support) ? Classification::successful
                                                                          : Classification::unsuccessful;
      break;
    }
    if (step > trace.step_cap) {
      trace.classification = Classification::step_cap_reached;
      break;
    }

    const std::size_t pick = policy.selector == Selector::first_enumerated ? 0 : rng.below(options.size());
    const Transition& t = options[pick];
    CoalitionStructure next = apply(current, t, s);

    if (auto v = validate_structure(next, s); !v.empty()) breach(step, "invalid structure: " + v.front().detail);
    const std::uint64_t next_potential = potential(next);
    const Signature next_signature = signature(next);
    const auto gain = static_cast<std::int64_t>(next_potential) - static_cast<std::int64_t>(current_potential);
    if (auto expected = expected_potential_gain(current, t)) {
      if (gain != *expected)
        breach(step, "potential changed by " + std::to_string(gain) + ", expected " + std::to_string(*expected));
      if (gain < 2) breach(step, "potential gain below 2");
    }
    if ((t.kind == TransitionKind::compromise || t.kind == TransitionKind::subsume) &&
        !lex_less(current_signature, next_signature))
      breach(step, "signature did not increase: " + to_string(current_signature) + " -> " +
                       to_string(next_signature));

    if (debug_logging()) std::cerr << "[delib] step " << step << ": " << describe(t, current, s) << '\n';

    trace.steps.push_back({step, t, next_potential, next_signature});
    current = std::move(next);
    current_potential = next_potential;
    current_signature = next_signature;
  }
  trace.terminal = std::move(current);
  return trace;
}

CoalitionStructure default_initial_structure(const DeliberationSpace& s) {
  CoalitionStructure d;
  Coalition status_quo{{}, s.status_quo()};
  for (AgentIndex v = 0; v < s.agent_count(); ++v) {
    if (!s.has_approvals(v)) {
      status_quo.members.push_back(v);
      continue;
    }
    if (s.is_continuous()) {
      d.coalitions.push_back({{v}, Proposal{{}, s.agent(v).at}});
      continue;
    }
    const auto& xs = s.proposals();
    std::optional<std::size_t> best;
    double best_distance = 0.0;
    for (std::size_t x = 1; x < xs.size(); ++x) {
      if (!s.approves(v, xs[x])) continue;
      const double dist = s.distance(s.agent(v).at, xs[x].at);
      if (!best || dist < best_distance) best = x, best_distance = dist;
    }
    d.coalitions.push_back({{v}, xs[*best]});
  }
  if (!status_quo.empty()) d.coalitions.push_back(std::move(status_quo));
  return d;
}

Scenario generate_scenario(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.min_agents < 1 || config.min_agents > config.max_agents)
    throw Error(ErrorKind::usage, "agent bounds must satisfy 1 <= min <= max", "generator.agents");
  if (config.dimensions.empty()) throw Error(ErrorKind::usage, "no dimensions", "generator.dimensions");
  if (!config.continuous && (config.min_proposals < 1 || config.min_proposals > config.max_proposals))
    throw Error(ErrorKind::usage, "proposal bounds must satisfy 1 <= min <= max", "generator.proposals");

  Rng rng(seed);
  const std::size_t n = rng.between(config.min_agents, config.max_agents);
  const std::size_t d = config.dimensions[rng.below(config.dimensions.size())];
  const double scale = config.decimals >= 0 ? std::pow(10.0, config.decimals) : 0.0;
  auto coordinate = [&] {
    double c = (2.0 * rng.unit() - 1.0) * config.coordinate_range;
    if (config.decimals >= 0) c = std::round(c * scale) / scale;
    return c;
  };
  const Point origin(std::vector<double>(d, 0.0));
  auto draw = [&](bool avoid_origin) {
    for (;;) {
      Point p;
      for (std::size_t k = 0; k < d; ++k) p.coords.push_back(coordinate());
      if (!avoid_origin || !(p == origin)) return p;
    }
  };

  std::vector<Agent> agents;
  for (std::size_t i = 0; i < n; ++i) agents.push_back({"v" + std::to_string(i + 1), draw(config.continuous)});
  std::optional<std::vector<Proposal>> proposals;
  if (!config.continuous) {
    const std::size_t m = rng.between(config.min_proposals, config.max_proposals);
    proposals.emplace();
    for (std::size_t i = 0; i < m; ++i) proposals->push_back({"x" + std::to_string(i + 1), draw(true)});
  }
  DeliberationSpace space(Metric::euclidean(d), std::move(agents), origin, std::move(proposals),
                          "random-" + std::to_string(seed));
  auto initial = default_initial_structure(space);
  return {std::move(space), std::move(initial)};
}

BatchResult batch(const GeneratorConfig& config, const std::vector<Policy>& policies, std::uint64_t first_seed,
                  std::uint64_t last_seed, unsigned threads) {
  if (policies.empty()) throw Error(ErrorKind::usage, "no policies", "policies");
  if (last_seed < first_seed) throw Error(ErrorKind::usage, "empty seed range", "seeds");
  const std::size_t seeds = static_cast<std::size_t>(last_seed - first_seed + 1);
  const std::size_t tasks = seeds * policies.size();

  BatchResult result;
  result.rows.resize(tasks);
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = cursor.fetch_add(1);
      if (task >= tasks) return;
      try {
        const std::uint64_t seed = first_seed + task / policies.size();
        Policy policy = policies[task % policies.size()];
        policy.seed = seed;
        auto scenario = generate_scenario(config, seed);
        auto trace = run(scenario.space, scenario.initial, policy);
        BatchRow& row = result.rows[task];
        row.seed = seed;
        row.agents = scenario.space.agent_count();
        row.dimension = scenario.space.dimension();
        if (!scenario.space.is_continuous()) row.proposals = scenario.space.proposals().size() - 1;
        row.policy = policy.spec();
        row.steps = trace.steps.size();
        row.classification = trace.classification;
        row.max_support = trace.max_support;
        row.max_terminal_coalition = largest_coalition(trace.terminal);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor.store(tasks);
        return;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (const auto& row : result.rows) {
    auto& sum = result.summary[row.policy];
    ++sum.runs;
    switch (row.classification) {
      case Classification::successful: ++sum.successful; break;
      case Classification::unsuccessful: ++sum.unsuccessful; break;
      case Classification::step_cap_reached: ++sum.cap_reached; break;
    }
    ++sum.step_histogram[row.steps];
  }
  return result;
}

}  // namespace delib
