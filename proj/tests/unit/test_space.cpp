#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "delib/errors.hpp"
#include "delib/oracle.hpp"
#include "delib/scenario_io.hpp"
#include "support.hpp"

using namespace delib;

namespace {

using Ids = std::vector<std::string>;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::usage;
}

}  // namespace

TEST_CASE("example 1 approval sets and supporters") {
  const auto sc = builtin_fixture("example1");
  const auto& s = sc.space;
  CHECK(approval_set(s, *s.find_agent("v1")) == Ids{"a", "b"});
  CHECK(approval_set(s, *s.find_agent("v2")) == Ids{"b", "c"});
  CHECK(approval_set(s, *s.find_agent("v3")) == Ids{"b", "c", "d"});

  const std::vector<AgentIndex> c{*s.find_agent("v1"), *s.find_agent("v2")};
  CHECK(supporters(s, c, s.resolve_proposal("a")) == std::vector<AgentIndex>{*s.find_agent("v1")});
  CHECK(supporters(s, c, s.resolve_proposal("b")) == c);
  CHECK(supporters(s, c, s.status_quo()).empty());

  const auto rep = max_support(s);
  CHECK(rep.max_support == 3);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(rep.witnesses[0].id == "b");
}

TEST_CASE("euclidean rendering of example 1 has the same approval sets") {
  const auto a = builtin_fixture("example1");
  const auto b = builtin_fixture("example1_euclidean");
  for (const auto& id : {"v1", "v2", "v3"})
    CHECK(approval_set(a.space, *a.space.find_agent(id)) == approval_set(b.space, *b.space.find_agent(id)));
}

TEST_CASE("example 6: v9 approves p and e") {
  const auto sc = builtin_fixture("example6");
  CHECK(approval_set(sc.space, *sc.space.find_agent("v9")) == Ids{"p", "e"});
  const auto rep = max_support(sc.space);
  CHECK(rep.max_support == 5);
  std::set<std::string> w;
  for (const auto& p : rep.witnesses) w.insert(p.id);
  CHECK(w == std::set<std::string>{"p", "e"});
}

TEST_CASE("finite max_support matches the naive double loop on every fixture") {
  for (const auto& name : fixture_names()) {
    const auto sc = builtin_fixture(name);
    if (sc.space.is_continuous()) continue;
    CAPTURE(name);
    const auto a = max_support(sc.space);
    const auto b = naive_max_support(sc.space);
    CHECK(a.max_support == b.max_support);
    CHECK(a.witnesses == b.witnesses);
  }
}

TEST_CASE("agent at the status quo approves nothing") {
  DeliberationSpace s(Metric::euclidean(1), {{"v", Point{0}}, {"w", Point{1}}}, Point{0},
                      std::vector<Proposal>{{"a", Point{0.5}}});
  CHECK(approval_set(s, 0).empty());
  CHECK_FALSE(s.has_approvals(0));
  CHECK(approval_set(s, 1) == Ids{"a"});
}

TEST_CASE("approval_set on a continuous space is unsupported") {
  const auto sc = builtin_fixture("example3_continuous");
  CHECK(kind_of([&] { approval_set(sc.space, 0); }) == ErrorKind::unsupported);
}

TEST_CASE("continuous max_support on the line matches interval counting") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(9);
    std::vector<Agent> agents;
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::round((2 * rng.unit() - 1) * 500) / 100;
      xs.push_back(x);
      agents.push_back({"v" + std::to_string(i), Point{x}});
    }
    DeliberationSpace s(Metric::euclidean(1), agents, Point{0}, std::nullopt);
    const auto rep = max_support(s);
    CHECK(rep.max_support == testsupport::interval_max_support(xs, 0.0));
    if (rep.max_support > 0) {
      REQUIRE(rep.witnesses.size() == 1);
      std::vector<AgentIndex> all(n);
      for (std::size_t v = 0; v < n; ++v) all[v] = v;
      CHECK(supporters(s, all, rep.witnesses[0]).size() == rep.max_support);
    }
  }
}

TEST_CASE("continuous max_support in the plane is bracketed by a grid oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<Agent> agents;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(testsupport::random_point(rng, 2, 3.0));
      agents.push_back({"v" + std::to_string(i), pts.back()});
    }
    DeliberationSpace s(Metric::euclidean(2), agents, Point{0, 0}, std::nullopt);
    const auto rep = max_support(s);
    // grid count is a lower bound on m*
    std::size_t grid_best = 0;
    for (int i = -120; i <= 120; ++i)
      for (int j = -120; j <= 120; ++j) {
        const Point p{i * 0.025, j * 0.025};
        std::size_t c = 0;
        for (const auto& v : pts)
          if (testsupport::dist(v, p) < testsupport::dist(v, Point{0, 0})) ++c;
        grid_best = std::max(grid_best, c);
      }
    CHECK(rep.max_support >= grid_best);
    REQUIRE(rep.witnesses.size() == (rep.max_support > 0 ? 1u : 0u));
    if (rep.max_support > 0) {
      std::size_t c = 0;
      for (const auto& v : pts)
        if (testsupport::dist(v, std::get<Point>(rep.witnesses[0].at)) < testsupport::dist(v, Point{0, 0})) ++c;
      CHECK(c == rep.max_support);
    }
  }
}

TEST_CASE("continuous max_support refuses more agents than the cap") {
  std::vector<Agent> agents;
  for (int i = 0; i < 17; ++i) agents.push_back({"v" + std::to_string(i), Point{1.0 + i}});
  DeliberationSpace s(Metric::euclidean(1), agents, Point{0}, std::nullopt);
  CHECK(kind_of([&] { max_support(s); }) == ErrorKind::cap_exceeded);
  CHECK(max_support(s, 17).max_support == 17);
}

TEST_CASE("space construction errors") {
  const auto e1 = Metric::euclidean(1);
  CHECK(kind_of([&] {
          DeliberationSpace(e1, {{"v", Point{1}}, {"v", Point{2}}}, Point{0}, std::vector<Proposal>{});
        }) == ErrorKind::validation);
  CHECK(kind_of([&] {
          DeliberationSpace(e1, {{"v", Point{1, 2}}}, Point{0}, std::vector<Proposal>{});
        }) == ErrorKind::validation);
  CHECK(kind_of([&] {
          DeliberationSpace(e1, {{"v", Point{1}}}, Point{0}, std::vector<Proposal>{{"r", Point{3}}});
        }) == ErrorKind::validation);
  CHECK(kind_of([&] {
          DeliberationSpace(e1, {{"v", Point{1}}}, Point{0}, std::vector<Proposal>{{"a", Point{3}}, {"a", Point{2}}});
        }) == ErrorKind::validation);
  const auto m = Metric::explicit_matrix({"r", "v"}, {{0, 1}, {1, 0}});
  CHECK(kind_of([&] { DeliberationSpace(m, {{"v", NodeRef{1}}}, NodeRef{0}, std::nullopt); }) ==
        ErrorKind::validation);
  const DeliberationSpace ok(e1, {{"v", Point{1}}}, Point{0}, std::vector<Proposal>{{"a", Point{1}}});
  CHECK(kind_of([&] { ok.resolve_proposal("zzz"); }) == ErrorKind::unknown_id);
  CHECK(ok.proposals().size() == 2);
  CHECK(ok.proposals()[0].id == "r");
}
