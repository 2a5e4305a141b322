#include <doctest.h>

#include <string>

#include "delib/errors.hpp"
#include "delib/scenario_io.hpp"

using namespace delib;

namespace {

const char* kExample2 = R"({
  "format_version": 1,
  "name": "example2-file",
  "space": {"metric": "euclidean", "dimension": 1},
  "status_quo": {"coords": [0]},
  "agents": [
    {"id": "v1", "coords": [1]}, {"id": "v2", "coords": [1]}, {"id": "v3", "coords": [1]},
    {"id": "v4", "coords": [5]}, {"id": "v5", "coords": [5]}, {"id": "v6", "coords": [5]},
    {"id": "v7", "coords": [5]}, {"id": "v8", "coords": [-1]}, {"id": "v9", "coords": [-1]},
    {"id": "v10", "coords": [-1]}
  ],
  "proposals": [{"id": "a", "coords": [1]}, {"id": "b", "coords": [5]}, {"id": "c", "coords": [-1]}],
  "initial_structure": [
    {"proposal": "a", "members": ["v1", "v2", "v3"]},
    {"proposal": "b", "members": ["v4", "v5", "v6", "v7"]},
    {"proposal": "c", "members": ["v8", "v9", "v10"]}
  ]
})";

struct Failure {
  ErrorKind kind;
  std::string field;
  std::string clause;
};

Failure load_failure(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const Error& e) {
    return {e.kind(), e.field(), e.clause()};
  }
  FAIL("scenario loaded although it is invalid");
  return {};
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("example 2 scenario file loads") {
  const auto sc = load_scenario(kExample2);
  CHECK(sc.space.name() == "example2-file");
  CHECK(sc.space.agent_count() == 10);
  CHECK(potential(sc.initial) == 34);
  CHECK(max_support(sc.space).max_support == 7);
  const auto fx = builtin_fixture("example2");
  CHECK(sc.initial == fx.initial);
}

TEST_CASE("fixtures round-trip through JSON") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto sc = builtin_fixture(name);
    const auto text = write_scenario(sc);
    const auto back = load_scenario(text);
    CHECK(write_scenario(back) == text);
    CHECK(back.initial == sc.initial);
  }
}

TEST_CASE("unknown fixture") {
  try {
    builtin_fixture("example9");
    FAIL("expected unknown_id");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unknown_id);
  }
}

TEST_CASE("scenario errors are distinct and name the field") {
  auto f = load_failure("{ not json");
  CHECK(f.kind == ErrorKind::parse);

  f = load_failure(replace(kExample2, "\"format_version\": 1", "\"format_version\": 7"));
  CHECK(f.kind == ErrorKind::unsupported);
  CHECK(f.field == "format_version");

  f = load_failure(replace(kExample2, "[\"v8\", \"v9\", \"v10\"]", "[\"v8\", \"v9\", \"v11\"]"));
  CHECK(f.kind == ErrorKind::unknown_id);
  CHECK(f.field == "initial_structure[2].members[2]");

  f = load_failure(replace(kExample2, "[\"v8\", \"v9\", \"v10\"]", "[\"v8\", \"v9\", \"v1\"]"));
  CHECK(f.kind == ErrorKind::validation);
  CHECK(f.clause == "partition_overlap");

  f = load_failure(replace(kExample2, "{\"proposal\": \"c\", \"members\": [\"v8\", \"v9\", \"v10\"]}",
                           "{\"proposal\": \"a\", \"members\": [\"v8\", \"v9\", \"v10\"]}"));
  CHECK(f.kind == ErrorKind::validation);
  CHECK(f.clause == "approval");
  CHECK(f.field == "initial_structure[2]");

  f = load_failure(replace(kExample2, "{\"proposal\": \"c\", \"members\": [\"v8\", \"v9\", \"v10\"]}",
                           "{\"proposal\": \"zz\", \"members\": [\"v8\", \"v9\", \"v10\"]}"));
  CHECK(f.kind == ErrorKind::unknown_id);

  f = load_failure(replace(kExample2, "{\"id\": \"v2\", \"coords\": [1]}", "{\"id\": \"v2\", \"coords\": [1, 2]}"));
  CHECK(f.kind == ErrorKind::validation);
  CHECK(f.clause == "dimension");

  f = load_failure(replace(kExample2, "\"agents\"", "\"agentz\""));
  CHECK(f.kind == ErrorKind::validation);
  CHECK(f.field == "$.agents");
}

TEST_CASE("explicit metric scenario with a broken triangle inequality") {
  const std::string text = R"({
    "format_version": 1,
    "space": {"metric": "explicit", "points": ["r", "a", "v"],
              "matrix": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]},
    "status_quo": {"point": "r"},
    "agents": [{"id": "v", "point": "v"}],
    "proposals": [{"id": "a", "point": "a"}]
  })";
  const auto f = load_failure(text);
  CHECK(f.kind == ErrorKind::validation);
  CHECK(f.clause == "triangle_inequality");
  CHECK(f.field == "space.matrix");

  const auto ok = load_scenario(replace(text, "[[0, 1, 5], [1, 0, 1], [5, 1, 0]]", "[[0, 1, 2], [1, 0, 1], [2, 1, 0]]"));
  // no initial structure: the default one
  CHECK(validate_structure(ok.initial, ok.space).empty());
  REQUIRE(ok.initial.size() == 1);
  CHECK(ok.initial[0].proposal.id == "a");
}

TEST_CASE("continuous scenario accepts coordinate proposals") {
  const auto sc = builtin_fixture("example5_continuous");
  const auto text = write_scenario(sc);
  CHECK(text.find("\"continuous\"") != std::string::npos);
  const auto f = load_failure(replace(text, "\"continuous\"", "\"discrete\""));
  CHECK(f.kind == ErrorKind::validation);
}

TEST_CASE("trace round-trip") {
  GeneratorConfig cfg;
  cfg.continuous = true;
  cfg.max_agents = 6;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sc = generate_scenario(cfg, seed);
    const auto trace = run(sc.space, sc.initial, Policy::parse("subsume>compromise", Selector::uniform_random, seed));
    const auto text = write_trace(trace, sc.space);
    const auto back = read_trace(text, sc.space);
    CHECK(write_trace(back, sc.space) == text);
    CHECK(back.terminal == trace.terminal);
    CHECK(back.classification == trace.classification);
  }
  const auto sc = builtin_fixture("example5");
  const auto trace = run(sc.space, sc.initial, Policy::parse("compromise"));
  const auto back = read_trace(write_trace(trace, sc.space), sc.space);
  REQUIRE(back.steps.size() == 1);
  CHECK(back.steps[0].transition == trace.steps[0].transition);
  CHECK_THROWS_AS(read_trace("{\"format_version\": 1}", sc.space), Error);
}

TEST_CASE("summary CSV round-trip with quoted policies") {
  GeneratorConfig cfg;
  cfg.max_agents = 5;
  const auto result = batch(cfg, {Policy::parse("follow,single_agent"), Policy::parse("merge")}, 1, 12, 2);
  const auto csv = write_summary(result);
  CHECK(csv.rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
  CHECK(csv.find("\"follow,single_agent\"") != std::string::npos);
  CHECK(read_summary(csv) == result.rows);
  CHECK_THROWS_AS(read_summary("seed,n\n1,2\n"), Error);
}

TEST_CASE("generator config") {
  const auto c = load_generator_config(
      R"({"kind": "continuous", "agents": [2, 8], "dimensions": [1, 2, 3], "coordinate_range": 4, "decimals": 3})");
  CHECK(c.continuous);
  CHECK(c.min_agents == 2);
  CHECK(c.max_agents == 8);
  CHECK(c.dimensions == std::vector<std::size_t>{1, 2, 3});
  CHECK(c.coordinate_range == 4.0);
  CHECK(c.decimals == 3);
  CHECK_THROWS_AS(load_generator_config(R"({"dimensions": [9]})"), Error);
  CHECK_THROWS_AS(load_generator_config(R"({"kind": "continuous", "agents": [2, 40]})"), Error);
  CHECK_THROWS_AS(load_generator_config(R"({"agents": "many"})"), Error);
}

TEST_CASE("writing to a bad path is an io error") {
  try {
    write_text_file("/nonexistent-dir/x/trace.json", "{}");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}
