#pragma once

// JSON scenario files, the built-in worked examples, and serialization of
// traces, batch summaries (CSV) and oracle reports.

#include <string>
#include <string_view>
#include <vector>

#include "delib/engine.hpp"
#include "delib/oracle.hpp"

namespace delib {

inline constexpr int kFormatVersion = 1;

// Throws Error(parse) on malformed JSON and Error(validation | unknown_id)
// naming the field and clause on any invariant violation. Without an
// "initial_structure" the default initial structure is used.
Scenario load_scenario(std::string_view text);
std::string write_scenario(const Scenario& scenario);

Scenario load_scenario_file(const std::string& path);

std::vector<std::string> fixture_names();
// Throws Error(unknown_id) for an unknown name.
Scenario builtin_fixture(std::string_view name);

std::string write_trace(const RunTrace& trace, const DeliberationSpace& s);
RunTrace read_trace(std::string_view text, const DeliberationSpace& s);

inline constexpr std::string_view kSummaryHeader =
    "seed,n,d,x_size,policy,steps,classification,m_star,max_terminal_coalition";

std::string write_summary(const BatchResult& result);
std::vector<BatchRow> read_summary(std::string_view csv);

GeneratorConfig load_generator_config(std::string_view text);

std::string write_support_report(const SupportReport& report, const DeliberationSpace& s);
std::string write_explore_report(const ExploreReport& report, const DeliberationSpace& s);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace delib
