#include "delib/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "delib/errors.hpp"

namespace delib {

using json = nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& clause, const std::string& message) {
  throw Error(ErrorKind::validation, message, field, clause);
}

const json& need(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) invalid(path + "." + key, "required", "missing field");
  return obj.at(key);
}

Point parse_coords(const json& j, const std::string& field) {
  if (!j.is_array()) invalid(field, "type", "expected an array of numbers");
  Point p;
  for (const auto& c : j) {
    if (!c.is_number()) invalid(field, "type", "expected an array of numbers");
    p.coords.push_back(c.get<double>());
  }
  return p;
}

Location parse_location(const json& obj, const Metric& metric, const std::string& path) {
  if (metric.is_euclidean()) return parse_coords(need(obj, "coords", path), path + ".coords");
  const auto& name = need(obj, "point", path);
  if (!name.is_string()) invalid(path + ".point", "type", "expected a point id");
  auto node = metric.find_node(name.get<std::string>());
  if (!node)
    throw Error(ErrorKind::unknown_id, "unknown point '" + name.get<std::string>() + "'", path + ".point",
                "unknown_point");
  return *node;
}

json location_json(const Location& at, const Metric& metric) {
  if (const auto* p = std::get_if<Point>(&at)) return json{{"coords", p->coords}};
  return json{{"point", metric.nodes().at(std::get<NodeRef>(at).index)}};
}

json proposal_ref(const Proposal& p) {
  if (!p.id.empty()) return p.id;
  return std::get<Point>(p.at).coords;
}

Proposal parse_proposal_ref(const json& j, const DeliberationSpace& s, const std::string& field) {
  if (j.is_string()) {
    const auto id = j.get<std::string>();
    if (id == kStatusQuoId) return s.status_quo();
    if (s.is_continuous()) throw Error(ErrorKind::unknown_id, "named proposal on a continuous space", field, "unknown_proposal");
    if (auto x = s.find_proposal(id)) return s.proposals()[*x];
    throw Error(ErrorKind::unknown_id, "unknown proposal '" + id + "'", field, "unknown_proposal");
  }
  if (j.is_array()) {
    if (!s.is_continuous())
      invalid(field, "finite_proposals", "coordinates given for a finite proposal space");
    Point p = parse_coords(j, field);
    if (p.dim() != s.dimension()) invalid(field, "dimension", "wrong number of coordinates");
    return Proposal{{}, std::move(p)};
  }
  invalid(field, "type", "expected a proposal id or coordinates");
}

std::vector<AgentIndex> parse_members(const json& j, const DeliberationSpace& s, const std::string& field) {
  if (!j.is_array()) invalid(field, "type", "expected an array of agent ids");
  std::vector<AgentIndex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& id = j[i];
    if (!id.is_string()) invalid(field, "type", "expected an array of agent ids");
    auto v = s.find_agent(id.get<std::string>());
    if (!v)
      throw Error(ErrorKind::unknown_id, "unknown agent '" + id.get<std::string>() + "'",
                  field + "[" + std::to_string(i) + "]", "unknown_agent");
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

json members_json(const std::vector<AgentIndex>& members, const DeliberationSpace& s) {
  json out = json::array();
  for (AgentIndex v : members) out.push_back(s.agent(v).id);
  return out;
}

json structure_json(const CoalitionStructure& d, const DeliberationSpace& s) {
  json out = json::array();
  for (const auto& c : d.coalitions)
    out.push_back(json{{"proposal", proposal_ref(c.proposal)}, {"members", members_json(c.members, s)}});
  return out;
}

CoalitionStructure parse_structure(const json& j, const DeliberationSpace& s, const std::string& field) {
  if (!j.is_array()) invalid(field, "type", "expected an array of coalitions");
  CoalitionStructure d;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = field + "[" + std::to_string(i) + "]";
    Coalition c;
    c.proposal = parse_proposal_ref(need(j[i], "proposal", path), s, path + ".proposal");
    c.members = parse_members(need(j[i], "members", path), s, path + ".members");
    d.coalitions.push_back(std::move(c));
  }
  return d;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, e.what(), {}, "json");
  }
}

void check_version(const json& root) {
  const auto& v = need(root, "format_version", "$");
  if (!v.is_number_integer()) invalid("format_version", "type", "expected an integer");
  if (v.get<int>() != kFormatVersion)
    throw Error(ErrorKind::unsupported, "unsupported format version " + std::to_string(v.get<int>()),
                "format_version", "version");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Scenario load_scenario(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) invalid("$", "type", "expected a JSON object");
  check_version(root);

  const auto& sp = need(root, "space", "$");
  const auto& kind = need(sp, "metric", "space");
  if (!kind.is_string()) invalid("space.metric", "type", "expected \"euclidean\" or \"explicit\"");
  Metric metric = Metric::euclidean(1);
  if (kind == "euclidean") {
    const auto& dim = need(sp, "dimension", "space");
    if (!dim.is_number_integer() || dim.get<long long>() < 1)
      invalid("space.dimension", "type", "expected a positive integer");
    metric = Metric::euclidean(dim.get<std::size_t>());
  } else if (kind == "explicit") {
    const auto& pts = need(sp, "points", "space");
    const auto& mat = need(sp, "matrix", "space");
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    try {
      names = pts.get<std::vector<std::string>>();
      rows = mat.get<std::vector<std::vector<double>>>();
    } catch (const json::exception&) {
      invalid("space", "type", "points must be strings and matrix rows numbers");
    }
    metric = Metric::explicit_matrix(std::move(names), std::move(rows));
  } else {
    invalid("space.metric", "metric_kind", "expected \"euclidean\" or \"explicit\"");
  }

  const auto& sq = need(root, "status_quo", "$");
  Location status_quo = parse_location(sq, metric, "status_quo");

  const auto& agents_json = need(root, "agents", "$");
  if (!agents_json.is_array()) invalid("agents", "type", "expected an array");
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < agents_json.size(); ++i) {
    const std::string path = "agents[" + std::to_string(i) + "]";
    const auto& id = need(agents_json[i], "id", path);
    if (!id.is_string()) invalid(path + ".id", "type", "expected a string");
    agents.push_back({id.get<std::string>(), parse_location(agents_json[i], metric, path)});
  }

  std::optional<std::vector<Proposal>> proposals;
  const auto& props = need(root, "proposals", "$");
  if (props.is_string()) {
    if (props != "continuous") invalid("proposals", "type", "expected an array or \"continuous\"");
  } else if (props.is_array()) {
    proposals.emplace();
    for (std::size_t i = 0; i < props.size(); ++i) {
      const std::string path = "proposals[" + std::to_string(i) + "]";
      const auto& id = need(props[i], "id", path);
      if (!id.is_string()) invalid(path + ".id", "type", "expected a string");
      proposals->push_back({id.get<std::string>(), parse_location(props[i], metric, path)});
    }
  } else {
    invalid("proposals", "type", "expected an array or \"continuous\"");
  }

  std::string name = root.value("name", std::string{});
  DeliberationSpace space(std::move(metric), std::move(agents), std::move(status_quo), std::move(proposals),
                          std::move(name));

  CoalitionStructure initial;
  if (root.contains("initial_structure")) {
    initial = parse_structure(root.at("initial_structure"), space, "initial_structure");
    if (auto v = validate_structure(initial, space); !v.empty()) {
      std::string field = "initial_structure";
      if (v.front().coalition) field += "[" + std::to_string(*v.front().coalition) + "]";
      invalid(field, std::string(to_string(v.front().clause)), v.front().detail);
    }
  } else {
    initial = default_initial_structure(space);
  }
  return {std::move(space), std::move(initial)};
}

std::string write_scenario(const Scenario& scenario) {
  const auto& s = scenario.space;
  json root;
  root["format_version"] = kFormatVersion;
  if (!s.name().empty()) root["name"] = s.name();
  if (s.is_euclidean()) {
    root["space"] = json{{"metric", "euclidean"}, {"dimension", s.dimension()}};
  } else {
    root["space"] = json{{"metric", "explicit"}, {"points", s.metric().nodes()}, {"matrix", s.metric().matrix()}};
  }
  root["status_quo"] = location_json(s.status_quo().at, s.metric());
  json agents = json::array();
  for (const auto& a : s.agents()) {
    json entry = location_json(a.at, s.metric());
    entry["id"] = a.id;
    agents.push_back(std::move(entry));
  }
  root["agents"] = std::move(agents);
  if (s.is_continuous()) {
    root["proposals"] = "continuous";
  } else {
    json props = json::array();
    for (const auto& p : s.proposals()) {
      if (p.id == kStatusQuoId) continue;
      json entry = location_json(p.at, s.metric());
      entry["id"] = p.id;
      props.push_back(std::move(entry));
    }
    root["proposals"] = std::move(props);
  }
  root["initial_structure"] = structure_json(scenario.initial, s);
  return dump(root);
}

Scenario load_scenario_file(const std::string& path) { return load_scenario(read_text_file(path)); }

namespace {

Point pt(std::initializer_list<double> c) { return Point(c); }

struct FixtureBuilder {
  std::string name;
  std::size_t dimension = 0;
  Point status_quo;
  std::vector<Agent> agents;
  std::optional<std::vector<Proposal>> proposals = std::vector<Proposal>{};

  FixtureBuilder(std::string n, std::size_t d, Point r) : name(std::move(n)), dimension(d), status_quo(std::move(r)) {}

  FixtureBuilder& agent(std::string id, Point p) {
    agents.push_back({std::move(id), std::move(p)});
    return *this;
  }
  FixtureBuilder& proposal(std::string id, Point p) {
    proposals->push_back({std::move(id), std::move(p)});
    return *this;
  }
  // `props` name proposals of the finite set; on a continuous space, each
  // coalition backs the coordinates listed in `points`.
  Scenario build(const std::vector<std::pair<std::string, std::vector<std::string>>>& coalitions,
                 const std::map<std::string, Point>& points = {}) {
    DeliberationSpace s(Metric::euclidean(dimension), agents, status_quo, proposals, name);
    CoalitionStructure d;
    for (const auto& [prop, ids] : coalitions) {
      Coalition c;
      c.proposal = s.is_continuous() ? Proposal{{}, points.at(prop)} : s.resolve_proposal(prop);
      for (const auto& id : ids) c.members.push_back(*s.find_agent(id));
      std::sort(c.members.begin(), c.members.end());
      d.coalitions.push_back(std::move(c));
    }
    return {std::move(s), std::move(d)};
  }
};

Scenario example1() {
  // Approval sets X^v1 = {a,b}, X^v2 = {b,c}, X^v3 = {b,c,d} realized by an
  // explicit metric: 1 for approved pairs, 3 for other agent-proposal pairs,
  // 2 everywhere else (including every distance to r).
  const std::vector<std::string> nodes{"r", "a", "b", "c", "d", "v1", "v2", "v3"};
  const std::map<std::string, std::vector<std::string>> approved{
      {"v1", {"a", "b"}}, {"v2", {"b", "c"}}, {"v3", {"b", "c", "d"}}};
  auto is_agent = [](const std::string& n) { return n[0] == 'v'; };
  auto is_alt = [&](const std::string& n) { return !is_agent(n) && n != "r"; };
  std::vector<std::vector<double>> m(nodes.size(), std::vector<double>(nodes.size(), 2.0));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    m[i][i] = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      const auto& a = nodes[i];
      const auto& b = nodes[j];
      const std::string* agent = is_agent(a) && is_alt(b) ? &a : is_agent(b) && is_alt(a) ? &b : nullptr;
      if (!agent) continue;
      const auto& alt = agent == &a ? b : a;
      const auto& ok = approved.at(*agent);
      m[i][j] = std::find(ok.begin(), ok.end(), alt) != ok.end() ? 1.0 : 3.0;
    }
  }
  Metric metric = Metric::explicit_matrix(nodes, m);
  auto node = [&](const char* n) { return *metric.find_node(n); };
  std::vector<Agent> agents{{"v1", node("v1")}, {"v2", node("v2")}, {"v3", node("v3")}};
  std::vector<Proposal> props{{"a", node("a")}, {"b", node("b")}, {"c", node("c")}, {"d", node("d")}};
  DeliberationSpace s(metric, agents, node("r"), props, "example1");
  CoalitionStructure d{{{{0, 1}, s.resolve_proposal("b")}, {{2}, s.resolve_proposal("c")}}};
  return {std::move(s), std::move(d)};
}

Scenario example1_euclidean() {
  FixtureBuilder b{"example1_euclidean", 2, pt({1.49, -0.4})};
  b.agent("v1", pt({0, 0})).agent("v2", pt({1, 1})).agent("v3", pt({2, 1}));
  b.proposal("a", pt({0, -1})).proposal("b", pt({1.2, 0.45})).proposal("c", pt({1.5, 1.8})).proposal("d", pt({3, 0.5}));
  return b.build({{"b", {"v1", "v2"}}, {"c", {"v3"}}});
}

Scenario example2() {
  FixtureBuilder b{"example2", 1, pt({0})};
  for (int i = 1; i <= 3; ++i) b.agent("v" + std::to_string(i), pt({1}));
  for (int i = 4; i <= 7; ++i) b.agent("v" + std::to_string(i), pt({5}));
  for (int i = 8; i <= 10; ++i) b.agent("v" + std::to_string(i), pt({-1}));
  b.proposal("a", pt({1})).proposal("b", pt({5})).proposal("c", pt({-1}));
  return b.build({{"a", {"v1", "v2", "v3"}}, {"b", {"v4", "v5", "v6", "v7"}}, {"c", {"v8", "v9", "v10"}}});
}

FixtureBuilder plane_base(std::string name, bool continuous, bool with_flank_agents) {
  FixtureBuilder b{std::move(name), 2, pt({0, 0})};
  b.agent("v1", pt({-3, 3})).agent("v2", pt({-3, 4})).agent("v3", pt({3, 3})).agent("v4", pt({3, 4}));
  if (with_flank_agents) b.agent("v5", pt({-4, 0})).agent("v6", pt({4, 0}));
  if (continuous) {
    b.proposals.reset();
  } else {
    b.proposal("a", pt({-3, 3})).proposal("b", pt({3, 3})).proposal("p", pt({0, 3}));
  }
  return b;
}

const std::map<std::string, Point> kPlanePoints{{"a", pt({-3, 3})}, {"b", pt({3, 3})}, {"p", pt({0, 3})}};

Scenario example3(bool continuous) {
  auto b = plane_base(continuous ? "example3_continuous" : "example3", continuous, false);
  return b.build({{"a", {"v1", "v2"}}, {"b", {"v3", "v4"}}}, kPlanePoints);
}

Scenario example4(std::string name, bool continuous) {
  auto b = plane_base(std::move(name), continuous, true);
  return b.build({{"a", {"v1", "v2", "v5"}}, {"b", {"v3", "v4", "v6"}}}, kPlanePoints);
}

Scenario example6() {
  FixtureBuilder b{"example6", 3, pt({0, 0, 0})};
  b.agent("v1", pt({3, 0, 0})).agent("v2", pt({0, 3, 0})).agent("v3", pt({-3, 0, 0})).agent("v4", pt({0, -3, 0}));
  b.agent("v5", pt({2, 0, 2})).agent("v6", pt({0, 2, 2})).agent("v7", pt({-2, 0, 2})).agent("v8", pt({0, -2, 2}));
  b.agent("v9", pt({0, 0, 3}));
  b.proposal("a", pt({2, 0, 0})).proposal("b", pt({0, 2, 0})).proposal("c", pt({-2, 0, 0}));
  b.proposal("d", pt({0, -2, 0})).proposal("p", pt({0, 0, 2})).proposal("e", pt({0, 0, 3.5}));
  return b.build({{"a", {"v1", "v5"}}, {"b", {"v2", "v6"}}, {"c", {"v3", "v7"}}, {"d", {"v4", "v8"}}, {"e", {"v9"}}});
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"example1", "example1_euclidean", "example2",  "example3",            "example3_continuous",
          "example4", "example4_continuous", "example5", "example5_continuous", "example6"};
}

Scenario builtin_fixture(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example1_euclidean") return example1_euclidean();
  if (name == "example2") return example2();
  if (name == "example3") return example3(false);
  if (name == "example3_continuous") return example3(true);
  // Examples 4 and 5 share one coalition structure: Example 5 continues
  // from the state Example 4 sets up.
  if (name == "example4") return example4("example4", false);
  if (name == "example4_continuous") return example4("example4_continuous", true);
  if (name == "example5") return example4("example5", false);
  if (name == "example5_continuous") return example4("example5_continuous", true);
  if (name == "example6") return example6();
  throw Error(ErrorKind::unknown_id, "unknown fixture '" + std::string(name) + "'", "fixture", "unknown_fixture");
}

std::string write_trace(const RunTrace& trace, const DeliberationSpace& s) {
  json root;
  root["format_version"] = kFormatVersion;
  root["scenario"] = trace.scenario;
  root["policy"] = trace.policy.spec();
  root["selector"] = to_string(trace.policy.selector);
  root["seed"] = trace.policy.seed;
  root["step_cap"] = trace.step_cap;
  root["max_support"] = trace.max_support;
  root["initial"] = json{{"structure", structure_json(trace.initial, s)},
                         {"potential", trace.initial_potential},
                         {"signature", trace.initial_signature.sizes}};
  json steps = json::array();
  for (const auto& st : trace.steps) {
    const auto& t = st.transition;
    steps.push_back(json{{"index", st.index},
                         {"kind", to_string(t.kind)},
                         {"sources", json::array({t.first, t.second})},
                         {"movers", json::array({members_json(t.movers_first, s), members_json(t.movers_second, s)})},
                         {"proposal", proposal_ref(t.target)},
                         {"potential", st.potential},
                         {"signature", st.signature.sizes}});
  }
  root["steps"] = std::move(steps);
  root["terminal"] = json{{"structure", structure_json(trace.terminal, s)},
                          {"classification", to_string(trace.classification)}};
  return dump(root);
}

RunTrace read_trace(std::string_view text, const DeliberationSpace& s) {
  const json root = parse_json(text);
  check_version(root);
  RunTrace trace;
  try {
    trace.scenario = root.at("scenario").get<std::string>();
    auto selector = parse_selector(root.at("selector").get<std::string>());
    if (!selector) invalid("selector", "selector", "unknown selector");
    trace.policy = Policy::parse(root.at("policy").get<std::string>(), *selector, root.at("seed").get<std::uint64_t>());
    trace.step_cap = root.at("step_cap").get<std::size_t>();
    trace.max_support = root.at("max_support").get<std::size_t>();
    const auto& init = root.at("initial");
    trace.initial = parse_structure(init.at("structure"), s, "initial.structure");
    trace.initial_potential = init.at("potential").get<std::uint64_t>();
    trace.initial_signature.sizes = init.at("signature").get<std::vector<std::size_t>>();
    const auto& steps = root.at("steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& st = steps[i];
      const std::string path = "steps[" + std::to_string(i) + "]";
      TraceStep step;
      step.index = st.at("index").get<std::size_t>();
      auto kind = parse_kind(st.at("kind").get<std::string>());
      if (!kind) invalid(path + ".kind", "kind", "unknown transition kind");
      step.transition.kind = *kind;
      const auto src = st.at("sources").get<std::vector<std::size_t>>();
      if (src.size() != 2) invalid(path + ".sources", "arity", "expected two coalition indices");
      step.transition.first = src[0];
      step.transition.second = src[1];
      const auto& movers = st.at("movers");
      if (!movers.is_array() || movers.size() != 2) invalid(path + ".movers", "arity", "expected two mover lists");
      // Movers keep their recorded order (sorted when written).
      step.transition.movers_first = parse_members(movers[0], s, path + ".movers[0]");
      step.transition.movers_second = parse_members(movers[1], s, path + ".movers[1]");
      step.transition.target = parse_proposal_ref(st.at("proposal"), s, path + ".proposal");
      step.potential = st.at("potential").get<std::uint64_t>();
      step.signature.sizes = st.at("signature").get<std::vector<std::size_t>>();
      trace.steps.push_back(std::move(step));
    }
    const auto& term = root.at("terminal");
    trace.terminal = parse_structure(term.at("structure"), s, "terminal.structure");
    auto cls = parse_classification(term.at("classification").get<std::string>());
    if (!cls) invalid("terminal.classification", "classification", "unknown classification");
    trace.classification = *cls;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what(), {}, "trace_schema");
  }
  return trace;
}

namespace {

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::uint64_t to_u64(const std::string& v, const std::string& field) {
  try {
    std::size_t used = 0;
    auto x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "expected an unsigned integer, got '" + v + "'", field, "csv");
  }
}

}  // namespace

std::string write_summary(const BatchResult& result) {
  std::ostringstream out;
  out << kSummaryHeader << '\n';
  for (const auto& r : result.rows) {
    out << r.seed << ',' << r.agents << ',' << r.dimension << ','
        << (r.proposals ? std::to_string(*r.proposals) : std::string("continuous")) << ','
        << csv_field(r.policy) << ',' << r.steps << ',' << to_string(r.classification) << ',' << r.max_support << ','
        << r.max_terminal_coalition << '\n';
  }
  return out.str();
}

std::vector<BatchRow> read_summary(std::string_view csv) {
  std::vector<BatchRow> rows;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < csv.size()) {
    auto end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view line = csv.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no++ == 0) {
      if (line != kSummaryHeader) throw Error(ErrorKind::parse, "unexpected header", "summary", "csv_header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = csv_split(line);
    const std::string field = "summary line " + std::to_string(line_no);
    if (f.size() != 9) throw Error(ErrorKind::parse, "expected 9 columns", field, "csv");
    BatchRow r;
    r.seed = to_u64(f[0], field);
    r.agents = to_u64(f[1], field);
    r.dimension = to_u64(f[2], field);
    if (f[3] != "continuous") r.proposals = to_u64(f[3], field);
    r.policy = f[4];
    r.steps = to_u64(f[5], field);
    auto cls = parse_classification(f[6]);
    if (!cls) throw Error(ErrorKind::parse, "unknown classification '" + f[6] + "'", field, "csv");
    r.classification = *cls;
    r.max_support = to_u64(f[7], field);
    r.max_terminal_coalition = to_u64(f[8], field);
    rows.push_back(std::move(r));
  }
  return rows;
}

GeneratorConfig load_generator_config(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) invalid("$", "type", "expected a JSON object");
  GeneratorConfig c;
  try {
    if (root.contains("kind")) {
      const auto kind = root.at("kind").get<std::string>();
      if (kind != "finite" && kind != "continuous") invalid("kind", "kind", "expected \"finite\" or \"continuous\"");
      c.continuous = kind == "continuous";
    }
    if (root.contains("agents")) {
      auto b = root.at("agents").get<std::vector<std::size_t>>();
      if (b.size() != 2) invalid("agents", "arity", "expected [min, max]");
      c.min_agents = b[0];
      c.max_agents = b[1];
    }
    if (root.contains("proposals")) {
      auto b = root.at("proposals").get<std::vector<std::size_t>>();
      if (b.size() != 2) invalid("proposals", "arity", "expected [min, max]");
      c.min_proposals = b[0];
      c.max_proposals = b[1];
    }
    if (root.contains("dimensions")) c.dimensions = root.at("dimensions").get<std::vector<std::size_t>>();
    if (root.contains("coordinate_range")) c.coordinate_range = root.at("coordinate_range").get<double>();
    if (root.contains("decimals")) c.decimals = root.at("decimals").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what(), "generator", "schema");
  }
  for (auto d : c.dimensions)
    if (d < 1 || d > kMaxDimension) invalid("dimensions", "dimension", "dimensions must lie in [1, 8]");
  if (c.continuous && c.max_agents > kDefaultOracleCap)
    invalid("agents", "oracle_cap", "continuous scenarios are limited to " + std::to_string(kDefaultOracleCap) + " agents");
  return c;
}

std::string write_support_report(const SupportReport& report, const DeliberationSpace& s) {
  json w = json::array();
  for (const auto& p : report.witnesses) w.push_back(proposal_ref(p));
  return dump(json{{"scenario", s.name()}, {"m_star", report.max_support}, {"witnesses", w}});
}

std::string write_explore_report(const ExploreReport& report, const DeliberationSpace& s) {
  json terminals = json::array();
  for (auto k : report.terminals) {
    terminals.push_back(json{{"state", k},
                             {"structure", structure_json(report.states[k], s)},
                             {"successful", is_successful(report.states[k], s, report.max_support)}});
  }
  json root{{"scenario", s.name()},
            {"m_star", report.max_support},
            {"states", report.states.size()},
            {"edges", report.edges.size()},
            {"terminals", terminals},
            {"all_terminals_successful", report.all_terminals_successful},
            {"acyclic", report.acyclic},
            {"order_violations", report.order_violations},
            {"cap_exceeded", report.cap_exceeded},
            {"enumeration_mismatches", report.mismatches.size()}};
  if (report.unsuccessful_witness) {
    json path = json::array();
    for (const auto& [from, t] : *report.unsuccessful_witness)
      path.push_back(json{{"from_state", from},
                          {"kind", to_string(t.kind)},
                          {"description", describe(t, report.states[from], s)}});
    root["unsuccessful_witness"] = path;
  } else {
    root["unsuccessful_witness"] = nullptr;
  }
  return dump(root);
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace delib
