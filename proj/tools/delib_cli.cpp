// delib: command-line front end.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 invalid input (parse, validation,
// unknown id, dimension mismatch, unsupported), 3 solver failure, cap
// exceeded or internal invariant breach.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "delib/errors.hpp"
#include "delib/scenario_io.hpp"

using namespace delib;
using json = nlohmann::json;

namespace {

struct Source {
  std::string scenario;
  std::string fixture;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* a = cmd->add_option("--scenario", src.scenario, "scenario JSON file");
  auto* b = cmd->add_option("--fixture", src.fixture, "built-in example name (see `fixtures --list`)");
  a->excludes(b);
  b->excludes(a);
}

Scenario load(const Source& src) {
  if (!src.scenario.empty()) return load_scenario_file(src.scenario);
  if (!src.fixture.empty()) return builtin_fixture(src.fixture);
  throw Error(ErrorKind::usage, "one of --scenario or --fixture is required");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<TransitionKind> parse_kinds(const std::string& text) {
  std::vector<TransitionKind> out;
  for (const auto& name : split(text, ',')) {
    auto k = parse_kind(name);
    if (!k) throw Error(ErrorKind::usage, "unknown transition kind '" + name + "'", "--kinds");
    out.push_back(*k);
  }
  return out;
}

Selector selector_of(const std::string& name) {
  auto s = parse_selector(name);
  if (!s) throw Error(ErrorKind::usage, "unknown selector '" + name + "'", "--selector");
  return *s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deliberation dynamics in metric spaces"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));

  // run
  Source run_src;
  std::string run_policy;
  std::uint64_t run_seed = 0;
  std::optional<std::size_t> run_cap;
  std::string run_out;
  std::string run_selector = "uniform_random";
  auto* run_cmd = app.add_subcommand("run", "run one maximal deliberation");
  add_source(run_cmd, run_src);
  run_cmd->add_option("--policy", run_policy, "transition kinds, ',' within a tier, '>' between tiers")->required();
  run_cmd->add_option("--seed", run_seed, "seed for transition selection")->required();
  run_cmd->add_option("--step-cap", run_cap, "maximum number of steps (default 10 n^2)");
  run_cmd->add_option("--out", run_out, "write the JSON trace here");
  run_cmd->add_option("--selector", run_selector, "uniform_random or first_enumerated");

  // transitions
  Source tr_src;
  std::string tr_kinds = "single_agent,follow,merge,compromise,subsume";
  auto* tr_cmd = app.add_subcommand("transitions", "list transitions available from the initial structure");
  add_source(tr_cmd, tr_src);
  tr_cmd->add_option("--kinds", tr_kinds, "comma-separated transition kinds");

  // oracle
  Source or_src;
  bool or_explore = false;
  bool or_cross = false;
  std::string or_kinds = "single_agent,follow,merge,compromise,subsume";
  std::size_t or_state_cap = kDefaultStateCap;
  std::size_t or_agent_cap = kExploreAgentCap;
  auto* or_cmd = app.add_subcommand("oracle", "maximum support and exhaustive state-graph search");
  add_source(or_cmd, or_src);
  or_cmd->add_flag("--explore", or_explore, "explore every reachable structure (finite spaces)");
  or_cmd->add_option("--kinds", or_kinds, "transition kinds for --explore");
  or_cmd->add_flag("--cross-check", or_cross, "compare enumerations against the naive oracle in every state");
  or_cmd->add_option("--state-cap", or_state_cap, "stop exploring after this many states");
  or_cmd->add_option("--agent-cap", or_agent_cap, "refuse to explore spaces with more agents");

  // batch
  std::string b_gen;
  std::string b_policies;
  std::string b_seeds;
  std::string b_out;
  unsigned b_threads = 0;
  auto* b_cmd = app.add_subcommand("batch", "run policies over generated scenarios");
  b_cmd->add_option("--gen", b_gen, "generator config JSON file")->required();
  b_cmd->add_option("--policies", b_policies, "policies separated by ';'")->required();
  b_cmd->add_option("--seeds", b_seeds, "seed range A..B (inclusive)")->required();
  b_cmd->add_option("--out", b_out, "write the CSV summary here");
  b_cmd->add_option("--threads", b_threads, "worker threads (0: hardware concurrency)");

  // fixtures
  bool fx_list = false;
  std::string fx_dump;
  auto* fx_cmd = app.add_subcommand("fixtures", "built-in worked examples");
  auto* fx_l = fx_cmd->add_flag("--list", fx_list, "list fixture names");
  auto* fx_d = fx_cmd->add_option("--dump", fx_dump, "print a fixture as scenario JSON");
  fx_l->excludes(fx_d);
  fx_d->excludes(fx_l);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  const bool as_json = format == "json";

  try {
    if (*run_cmd) {
      const Scenario sc = load(run_src);
      const Policy policy = Policy::parse(run_policy, selector_of(run_selector), run_seed);
      const RunTrace trace = run(sc.space, sc.initial, policy, run_cap);
      if (!run_out.empty()) write_text_file(run_out, write_trace(trace, sc.space));
      if (as_json) {
        std::cout << json{{"scenario", trace.scenario},
                          {"policy", policy.spec()},
                          {"seed", run_seed},
                          {"steps", trace.steps.size()},
                          {"classification", to_string(trace.classification)},
                          {"m_star", trace.max_support},
                          {"terminal", describe(trace.terminal, sc.space)}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "terminal after " << trace.steps.size() << " steps: " << upper(to_string(trace.classification))
                  << " (m*=" << trace.max_support << ")\n";
        std::cout << "  " << describe(trace.terminal, sc.space) << '\n';
      }
      return 0;
    }

    if (*tr_cmd) {
      const Scenario sc = load(tr_src);
      json out = json::object();
      for (auto kind : parse_kinds(tr_kinds)) {
        const auto ts = enumerate(kind, sc.initial, sc.space);
        if (as_json) {
          json list = json::array();
          for (const auto& t : ts) list.push_back(describe(t, sc.initial, sc.space));
          out[std::string(to_string(kind))] = list;
        } else {
          std::cout << to_string(kind) << ": " << ts.size() << '\n';
          for (const auto& t : ts) std::cout << "  " << describe(t, sc.initial, sc.space) << '\n';
        }
      }
      if (as_json) std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (*or_cmd) {
      const Scenario sc = load(or_src);
      const SupportReport support = max_support(sc.space);
      if (!or_explore) {
        if (as_json) {
          std::cout << write_support_report(support, sc.space);
        } else {
          std::cout << "m*=" << support.max_support << " witnesses=[";
          for (std::size_t i = 0; i < support.witnesses.size(); ++i)
            std::cout << (i ? "," : "") << describe(sc.space, support.witnesses[i]);
          std::cout << "]\n";
        }
        return 0;
      }
      const auto report = explore(sc.space, sc.initial, parse_kinds(or_kinds), {or_state_cap, or_cross, or_agent_cap});
      if (as_json) {
        std::cout << write_explore_report(report, sc.space);
      } else {
        std::cout << "m*=" << report.max_support << " states=" << report.states.size()
                  << " edges=" << report.edges.size() << " terminals=" << report.terminals.size() << '\n';
        std::cout << "all terminals successful: " << (report.all_terminals_successful ? "yes" : "no") << '\n';
        std::cout << "acyclic: " << (report.acyclic ? "yes" : "no")
                  << "  order violations: " << report.order_violations << '\n';
        if (or_cross) std::cout << "enumeration mismatches: " << report.mismatches.size() << '\n';
        if (report.cap_exceeded) std::cout << "state cap reached; graph is incomplete\n";
        if (report.unsuccessful_witness) {
          std::cout << "shortest path to an unsuccessful terminal:\n";
          for (const auto& [from, t] : *report.unsuccessful_witness)
            std::cout << "  " << describe(t, report.states[from], sc.space) << '\n';
        }
      }
      return report.cap_exceeded ? exit_code(ErrorKind::cap_exceeded) : 0;
    }

    if (*b_cmd) {
      const GeneratorConfig config = load_generator_config(read_text_file(b_gen));
      std::vector<Policy> policies;
      for (const auto& spec : split(b_policies, ';')) {
        if (spec.empty()) continue;
        policies.push_back(Policy::parse(spec));
      }
      if (policies.empty()) throw Error(ErrorKind::usage, "no policies given", "--policies");
      const auto dots = b_seeds.find("..");
      if (dots == std::string::npos) throw Error(ErrorKind::usage, "expected A..B", "--seeds");
      std::uint64_t first = 0;
      std::uint64_t last = 0;
      try {
        first = std::stoull(b_seeds.substr(0, dots));
        last = std::stoull(b_seeds.substr(dots + 2));
      } catch (const std::exception&) {
        throw Error(ErrorKind::usage, "expected A..B", "--seeds");
      }
      if (last < first) throw Error(ErrorKind::usage, "empty seed range", "--seeds");
      const BatchResult result = batch(config, policies, first, last, b_threads);
      if (!b_out.empty()) write_text_file(b_out, write_summary(result));
      if (as_json) {
        json out = json::object();
        for (const auto& [name, s] : result.summary)
          out[name] = json{{"runs", s.runs},
                           {"successful", s.successful},
                           {"unsuccessful", s.unsuccessful},
                           {"step_cap_reached", s.cap_reached},
                           {"success_rate", s.success_rate()}};
        std::cout << out.dump(2) << '\n';
      } else {
        for (const auto& [name, s] : result.summary) {
          std::printf("%-32s runs=%zu successful=%zu unsuccessful=%zu cap=%zu rate=%.4f\n", name.c_str(), s.runs,
                      s.successful, s.unsuccessful, s.cap_reached, s.success_rate());
        }
      }
      return 0;
    }

    if (*fx_cmd) {
      if (!fx_dump.empty()) {
        std::cout << write_scenario(builtin_fixture(fx_dump));
        return 0;
      }
      for (const auto& name : fixture_names()) std::cout << name << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << (e.clause().empty() ? "" : "/" + e.clause()) << "]: " << e.what()
              << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(ErrorKind::invariant_breach);
  }
  return 0;
}
