#include <doctest.h>

#include "delib/errors.hpp"
#include "delib/oracle.hpp"
#include "delib/scenario_io.hpp"

using namespace delib;

namespace {

const std::vector<TransitionKind> kAll(std::begin(kAllKinds), std::end(kAllKinds));

void check_mismatches(const std::vector<EnumerationMismatch>& mm) {
  for (const auto& m : mm) {
    CAPTURE(m.state);
    CAPTURE(to_string(m.kind));
    CHECK(m.only_in_module.size() == 0);
    CHECK(m.only_in_oracle.size() == 0);
  }
  CHECK(mm.empty());
}

}  // namespace

TEST_CASE("naive max support on fixtures") {
  CHECK(naive_max_support(builtin_fixture("example2").space).max_support == 7);
  const auto ex3 = naive_max_support(builtin_fixture("example3").space);
  CHECK(ex3.max_support == 4);
  REQUIRE(ex3.witnesses.size() == 1);
  CHECK(ex3.witnesses[0].id == "p");
}

TEST_CASE("enumerations match the naive oracle on finite fixtures") {
  for (const auto& name : fixture_names()) {
    const auto sc = builtin_fixture(name);
    if (sc.space.is_continuous()) continue;
    CAPTURE(name);
    check_mismatches(compare_enumerations(sc.initial, sc.space, kAll));
  }
}

TEST_CASE("enumerations match the naive oracle along random walks") {
  GeneratorConfig cfg;
  cfg.max_agents = 6;
  cfg.max_proposals = 5;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto sc = generate_scenario(cfg, seed);
    auto d = sc.initial;
    Rng rng(seed);
    for (int step = 0; step < 8; ++step) {
      check_mismatches(compare_enumerations(d, sc.space, kAll));
      std::vector<Transition> all;
      for (auto kind : kAll) {
        auto ts = enumerate(kind, d, sc.space);
        all.insert(all.end(), ts.begin(), ts.end());
      }
      if (all.empty()) break;
      d = apply(d, all[rng.below(all.size())], sc.space);
    }
  }
}

TEST_CASE("explore: example 3 and example 5 reach only successful terminals") {
  for (const char* name : {"example3", "example5"}) {
    CAPTURE(name);
    const auto sc = builtin_fixture(name);
    const auto rep = explore(sc.space, sc.initial, kAll, {kDefaultStateCap, true});
    CHECK(rep.all_terminals_successful);
    CHECK(rep.acyclic);
    CHECK(rep.order_violations == 0);
    CHECK(rep.mismatches.empty());
    CHECK_FALSE(rep.unsuccessful_witness);
    CHECK_FALSE(rep.cap_exceeded);
  }
}

TEST_CASE("explore: example 6 under compromise is stuck at an unsuccessful start") {
  const auto sc = builtin_fixture("example6");
  const auto rep = explore(sc.space, sc.initial, {TransitionKind::compromise}, {kDefaultStateCap, true, 9});
  CHECK(rep.states.size() == 1);
  CHECK_FALSE(rep.all_terminals_successful);
  REQUIRE(rep.unsuccessful_witness);
  CHECK(rep.unsuccessful_witness->empty());
}

TEST_CASE("explore: example 2 and example 3 under single_agent and follow") {
  const std::vector<TransitionKind> kinds{TransitionKind::single_agent, TransitionKind::follow};
  const auto ex2 = builtin_fixture("example2");
  // D0 -> follow -> terminal; D0 itself has no single-agent move
  const auto r2 = explore(ex2.space, ex2.initial, {TransitionKind::single_agent}, {kDefaultStateCap, true, 10});
  CHECK(r2.states.size() == 1);
  CHECK(r2.terminals == std::vector<std::size_t>{0});
  CHECK_FALSE(r2.all_terminals_successful);

  const auto ex3 = builtin_fixture("example3");
  const auto r3 = explore(ex3.space, ex3.initial, kinds, {kDefaultStateCap, true});
  CHECK(r3.terminals == std::vector<std::size_t>{0});
  CHECK_FALSE(r3.all_terminals_successful);
  REQUIRE(r3.unsuccessful_witness);
  CHECK(r3.unsuccessful_witness->empty());
}

TEST_CASE("explore: single agent approving the only proposal") {
  DeliberationSpace s(Metric::euclidean(1), {{"v", Point{1}}}, Point{0}, std::vector<Proposal>{{"a", Point{1}}});
  const auto rep = explore(s, default_initial_structure(s), kAll);
  CHECK(rep.terminals.size() == 1);
  CHECK(rep.all_terminals_successful);
}

TEST_CASE("explore: example 1 witness paths replay") {
  const auto sc = builtin_fixture("example1");
  const auto rep = explore(sc.space, sc.initial, kAll, {kDefaultStateCap, true});
  CHECK(rep.acyclic);
  CHECK(rep.mismatches.empty());
  if (rep.unsuccessful_witness) {
    auto d = rep.states[0];
    for (const auto& [from, t] : *rep.unsuccessful_witness) {
      CHECK(canonicalize(d) == rep.states[from]);
      d = canonicalize(apply(rep.states[from], t, sc.space));
    }
    CHECK_FALSE(is_successful(d, sc.space));
  }
}

TEST_CASE("explore refuses continuous spaces and large agent sets") {
  try {
    const auto sc = builtin_fixture("example3_continuous");
    explore(sc.space, sc.initial, kAll);
    FAIL("expected unsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported);
  }
  try {
    const auto sc = builtin_fixture("example2");
    explore(sc.space, sc.initial, kAll);
    FAIL("expected cap_exceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::cap_exceeded);
  }
}

TEST_CASE("explore keeps a partial graph when the state cap is hit") {
  GeneratorConfig cfg;
  cfg.min_agents = 6;
  cfg.max_agents = 6;
  cfg.min_proposals = 4;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto sc = generate_scenario(cfg, seed);
    const auto full = explore(sc.space, sc.initial, kAll);
    if (full.states.size() < 5) continue;
    const auto part = explore(sc.space, sc.initial, kAll, {3, false});
    CHECK(part.cap_exceeded);
    CHECK(part.states.size() == 3);
    return;
  }
  FAIL("no scenario with five states");
}
