#include <doctest.h>

#include <algorithm>
#include <functional>

#include "delib/errors.hpp"
#include "delib/oracle.hpp"
#include "delib/scenario_io.hpp"
#include "support.hpp"

using namespace delib;

namespace {

std::vector<AgentIndex> ids(const DeliberationSpace& s, std::vector<std::string> names) {
  std::vector<AgentIndex> out;
  for (const auto& n : names) out.push_back(*s.find_agent(n));
  std::sort(out.begin(), out.end());
  return out;
}

// 1D space with r = 0.
DeliberationSpace line(std::vector<std::pair<std::string, double>> agents,
                       std::vector<std::pair<std::string, double>> proposals) {
  std::vector<Agent> a;
  for (auto& [id, x] : agents) a.push_back({id, Point{x}});
  std::vector<Proposal> p;
  for (auto& [id, x] : proposals) p.push_back({id, Point{x}});
  return DeliberationSpace(Metric::euclidean(1), a, Point{0}, p);
}

bool all_approve(const DeliberationSpace& s, const Coalition& c) {
  return std::all_of(c.members.begin(), c.members.end(), [&](AgentIndex v) {
    return testsupport::dist(s.agent_point(v), std::get<Point>(c.proposal.at)) <
           testsupport::dist(s.agent_point(v), std::get<Point>(s.status_quo().at));
  });
}

}  // namespace

TEST_CASE("example 2: no single-agent transitions, one follow") {
  const auto sc = builtin_fixture("example2");
  CHECK(enumerate_single_agent(sc.initial, sc.space).empty());
  const auto f = enumerate_follow(sc.initial, sc.space);
  REQUIRE(f.size() == 1);
  CHECK(f[0].first == 1);
  CHECK(f[0].second == 0);
}

TEST_CASE("example 3: merge at p yields a successful grand coalition") {
  const auto sc = builtin_fixture("example3");
  CHECK(enumerate_single_agent(sc.initial, sc.space).empty());
  CHECK(enumerate_follow(sc.initial, sc.space).empty());
  const auto m = enumerate_merge(sc.initial, sc.space);
  REQUIRE(m.size() == 1);
  CHECK(m[0].target.id == "p");
  const auto next = apply(sc.initial, m[0], sc.space);
  REQUIRE(next.size() == 1);
  CHECK(next[0].size() == 4);
  CHECK(all_approve(sc.space, next[0]));
  CHECK(is_successful(next, sc.space));
}

TEST_CASE("example 3 continuous: merge synthesizes a jointly approved point") {
  const auto sc = builtin_fixture("example3_continuous");
  const auto m = enumerate_merge(sc.initial, sc.space);
  REQUIRE(m.size() == 1);
  const auto next = apply(sc.initial, m[0], sc.space);
  REQUIRE(next.size() == 1);
  CHECK(all_approve(sc.space, next[0]));
}

TEST_CASE("example 4: tangent approval balls block the merge") {
  for (const char* name : {"example4", "example4_continuous"}) {
    CAPTURE(name);
    const auto sc = builtin_fixture(name);
    CHECK(enumerate_merge(sc.initial, sc.space).empty());
  }
  const auto sc = builtin_fixture("example4_continuous");
  std::vector<Point> pts;
  for (AgentIndex v = 0; v < sc.space.agent_count(); ++v) pts.push_back(sc.space.agent_point(v));
  const auto res = best_common_proposal(pts, Point{0, 0});
  CHECK(res.margin >= -kFeasibilityTolerance);
  CHECK(res.lower_bound >= -kFeasibilityTolerance);
}

TEST_CASE("example 5: compromise strands v5 and v6") {
  const auto sc = builtin_fixture("example5");
  const auto& s = sc.space;
  const auto c = enumerate_compromise(sc.initial, s);
  REQUIRE(c.size() == 1);
  CHECK(c[0].target.id == "p");
  CHECK(c[0].movers_first == ids(s, {"v1", "v2"}));
  CHECK(c[0].movers_second == ids(s, {"v3", "v4"}));
  const auto next = apply(sc.initial, c[0], s);
  CHECK(signature(next).sizes == std::vector<std::size_t>{4, 1, 1});
  CHECK(potential(next) == 18);
  CHECK(potential(sc.initial) == 18);
  CHECK(next[0].members == ids(s, {"v5"}));
  CHECK(next[1].members == ids(s, {"v6"}));
  CHECK(next[2].members == ids(s, {"v1", "v2", "v3", "v4"}));
  CHECK(is_successful(next, s));
  CHECK(enumerate_subsume(sc.initial, s).empty());
}

TEST_CASE("example 5 continuous: compromise moves v1..v4") {
  const auto sc = builtin_fixture("example5_continuous");
  const auto& s = sc.space;
  const auto c = enumerate_compromise(sc.initial, s);
  const auto want = ids(s, {"v1", "v2", "v3", "v4"});
  bool found = false;
  for (const auto& t : c) {
    std::vector<AgentIndex> movers = t.movers_first;
    movers.insert(movers.end(), t.movers_second.begin(), t.movers_second.end());
    std::sort(movers.begin(), movers.end());
    const auto next = apply(sc.initial, t, s);
    CHECK(all_approve(s, next.coalitions.back()));
    if (movers == want) found = true;
  }
  CHECK(found);
}

TEST_CASE("example 6: no compromise") {
  const auto sc = builtin_fixture("example6");
  CHECK(enumerate_compromise(sc.initial, sc.space).empty());
  CHECK(enumerate_subsume(sc.initial, sc.space).empty());
}

TEST_CASE("single agent and follow on the line") {
  const auto s = line({{"v", 0.6}, {"u", 1}, {"w", 1}}, {{"h", 0.5}, {"o", 1}});
  CoalitionStructure d{{{{0}, s.resolve_proposal("h")}, {{1, 2}, s.resolve_proposal("o")}}};
  REQUIRE(validate_structure(d, s).empty());
  const auto sa = enumerate_single_agent(d, s);
  REQUIRE(sa.size() == 1);
  CHECK(sa[0].first == 0);
  CHECK(sa[0].second == 1);
  CHECK(sa[0].movers_first == std::vector<AgentIndex>{0});
  CHECK(*expected_potential_gain(d, sa[0]) == 2 * (2 - 1) + 2);
  const auto after = apply(d, sa[0], s);
  CHECK(potential(after) == potential(d) + 4);

  const auto f = enumerate_follow(d, s);
  CHECK(f.size() == 2);
  for (const auto& t : f) {
    CHECK(*expected_potential_gain(d, t) == 4);
    CHECK(potential(apply(d, t, s)) == 9);
  }
}

TEST_CASE("single agent never moves into a strictly smaller coalition") {
  const auto s = line({{"a", 1}, {"b", 1}, {"c", 1.2}}, {{"x", 1}, {"y", 1.1}});
  CoalitionStructure d{{{{0, 1}, s.resolve_proposal("x")}, {{2}, s.resolve_proposal("y")}}};
  REQUIRE(validate_structure(d, s).empty());
  for (const auto& t : enumerate_single_agent(d, s)) CHECK(t.first == 1);
}

TEST_CASE("status-quo coalitions take no part in single-agent, follow or merge") {
  const auto s = line({{"z", 0}, {"a", 1}}, {{"x", 1}});
  CoalitionStructure d{{{{0}, s.status_quo()}, {{1}, s.resolve_proposal("x")}}};
  REQUIRE(validate_structure(d, s).empty());
  CHECK(enumerate_single_agent(d, s).empty());
  CHECK(enumerate_follow(d, s).empty());
  CHECK(enumerate_merge(d, s).empty());
}

TEST_CASE("subsume on the line") {
  const auto s = line({{"a", 3}, {"b", 9}, {"w", 1}}, {{"five", 5}, {"one", 1}, {"mid", 1.5}});
  CoalitionStructure d{{{{0, 1}, s.resolve_proposal("five")}, {{2}, s.resolve_proposal("one")}}};
  REQUIRE(validate_structure(d, s).empty());
  // Both sides move in full, so both orderings are listed.
  const auto sub = enumerate_subsume(d, s);
  bool found = false;
  bool reversed = false;
  for (const auto& t : sub) {
    if (t.target.id != "mid") continue;
    if (t.first == 1) {
      reversed = true;
      continue;
    }
    found = true;
    CHECK(t.first == 0);
    CHECK(t.second == 1);
    CHECK(t.movers_first == std::vector<AgentIndex>{0, 1});
    CHECK(t.movers_second == std::vector<AgentIndex>{2});
    const auto next = apply(d, t, s);
    CHECK(next.size() == 1);
    CHECK(next[0].size() == 3);
    // k = 2, |C1| = 2, |C2| = 1
    CHECK(*expected_potential_gain(d, t) == 2 * 2 * (1 - 2 + 2));
    CHECK(potential(next) - potential(d) == 4);
  }
  CHECK(found);
  CHECK(reversed);
}

TEST_CASE("subsume list is contained in the compromise list; merge generalizes follow") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GeneratorConfig cfg;
    cfg.max_agents = 6;
    cfg.max_proposals = 5;
    const auto sc = generate_scenario(cfg, seed);
    const auto& s = sc.space;
    // walk a few steps so that structures other than the initial one are covered
    auto d = sc.initial;
    Rng rng(seed);
    for (int step = 0; step < 6; ++step) {
      std::set<TransitionKey> comp;
      for (const auto& t : enumerate_compromise(d, s)) comp.insert(key_of(t, s));
      for (const auto& t : enumerate_subsume(d, s)) {
        auto k = key_of(t, s);
        if (k.first > k.second) {
          std::swap(k.first, k.second);
          std::swap(k.movers_first, k.movers_second);
        }
        k.kind = TransitionKind::compromise;
        CHECK(comp.count(k) == 1);
      }
      std::set<std::pair<std::size_t, std::string>> merges;
      for (const auto& t : enumerate_merge(d, s))
        merges.insert({t.first * 100 + t.second, t.target.id});
      for (const auto& t : enumerate_follow(d, s)) {
        const auto i = std::min(t.first, t.second);
        const auto j = std::max(t.first, t.second);
        CHECK(merges.count({i * 100 + j, t.target.id}) == 1);
      }
      std::vector<Transition> all;
      for (auto kind : kAllKinds) {
        auto ts = enumerate(kind, d, s);
        all.insert(all.end(), ts.begin(), ts.end());
      }
      if (all.empty()) break;
      d = apply(d, all[rng.below(all.size())], s);
      CHECK(validate_structure(d, s).empty());
    }
  }
}

TEST_CASE("applying a transition to another structure is stale") {
  const auto sc = builtin_fixture("example5");
  const auto c = enumerate_compromise(sc.initial, sc.space);
  REQUIRE(c.size() == 1);
  const auto next = apply(sc.initial, c[0], sc.space);
  try {
    apply(next, c[0], sc.space);
    FAIL("expected stale_transition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::stale_transition);
  }
}

TEST_CASE("continuous compromise search refuses very large coalitions") {
  std::vector<Agent> agents;
  for (int i = 0; i < 21; ++i) agents.push_back({"v" + std::to_string(i), Point{1.0 + 0.01 * i}});
  DeliberationSpace s(Metric::euclidean(1), agents, Point{0}, std::nullopt);
  CoalitionStructure d;
  Coalition a;
  Coalition b;
  for (AgentIndex v = 0; v < 21; ++v) (v < 10 ? a : b).members.push_back(v);
  a.proposal = {{}, Point{1.0}};
  b.proposal = {{}, Point{1.15}};
  d.coalitions = {a, b};
  REQUIRE(validate_structure(d, s).empty());
  try {
    enumerate_compromise(d, s);
    FAIL("expected cap_exceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::cap_exceeded);
  }
}

TEST_CASE("transition kind names round-trip") {
  for (auto k : kAllKinds) CHECK(parse_kind(to_string(k)) == k);
  CHECK_FALSE(parse_kind("teleport"));
}
