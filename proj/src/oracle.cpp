#include "delib/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "delib/errors.hpp"

namespace delib {

namespace {

using Members = std::vector<AgentIndex>;

bool raw_approves(const DeliberationSpace& s, AgentIndex v, const Proposal& p) {
  return approves(s.agent(v).at, p.at, s.status_quo().at, s.metric());
}

bool raw_is_status_quo(const Proposal& p) { return p.id == kStatusQuoId; }

// Literal reading of the coalition and partition definitions, evaluated from
// raw distances.
bool raw_valid(const std::vector<Coalition>& d, const DeliberationSpace& s) {
  std::vector<int> seen(s.agent_count(), 0);
  const auto& xs = s.proposals();
  for (const auto& c : d) {
    for (AgentIndex v : c.members) {
      if (++seen[v] > 1) return false;
      if (raw_is_status_quo(c.proposal)) {
        for (const auto& x : xs)
          if (!raw_is_status_quo(x) && raw_approves(s, v, x)) return false;
      } else if (!raw_approves(s, v, c.proposal)) {
        return false;
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; });
}

Members approvers_of(const DeliberationSpace& s, const Members& c, const Proposal& p) {
  Members out;
  for (AgentIndex v : c)
    if (raw_approves(s, v, p)) out.push_back(v);
  return out;
}

Members subset_by_mask(const Members& c, unsigned mask) {
  Members out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (mask & (1u << i)) out.push_back(c[i]);
  return out;
}

Members minus(const Members& a, const Members& b) {
  Members out;
  for (AgentIndex v : a)
    if (std::find(b.begin(), b.end(), v) == b.end()) out.push_back(v);
  return out;
}

Members plus(Members a, const Members& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

std::vector<Coalition> others(const CoalitionStructure& d, std::size_t i, std::size_t j) {
  std::vector<Coalition> out;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (k != i && k != j) out.push_back(d[k]);
  return out;
}

}  // namespace

SupportReport naive_max_support(const DeliberationSpace& s) {
  const auto& xs = s.proposals();
  SupportReport report;
  std::vector<std::size_t> count(xs.size(), 0);
  for (std::size_t x = 0; x < xs.size(); ++x) {
    if (raw_is_status_quo(xs[x])) continue;
    for (AgentIndex v = 0; v < s.agent_count(); ++v)
      if (raw_approves(s, v, xs[x])) ++count[x];
    report.max_support = std::max(report.max_support, count[x]);
  }
  if (report.max_support == 0) return report;
  for (std::size_t x = 0; x < xs.size(); ++x)
    if (!raw_is_status_quo(xs[x]) && count[x] == report.max_support) report.witnesses.push_back(xs[x]);
  return report;
}

TransitionKey key_of(const Transition& t, const DeliberationSpace& s) {
  TransitionKey k{t.kind, t.first, t.second, describe(s, t.target), t.movers_first, t.movers_second};
  const bool symmetric = t.kind == TransitionKind::merge || t.kind == TransitionKind::compromise;
  if (symmetric && k.first > k.second) {
    std::swap(k.first, k.second);
    std::swap(k.movers_first, k.movers_second);
  }
  return k;
}

std::set<TransitionKey> naive_transitions(TransitionKind kind, const CoalitionStructure& d,
                                          const DeliberationSpace& s) {
  const auto& xs = s.proposals();
  std::set<TransitionKey> out;
  const std::size_t m = d.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Coalition& a = d[i];
      const Coalition& b = d[j];
      const bool sq_pair = raw_is_status_quo(a.proposal) || raw_is_status_quo(b.proposal);
      switch (kind) {
        case TransitionKind::single_agent: {
          if (sq_pair || a.empty() || b.size() < a.size()) break;
          for (AgentIndex v : a.members) {
            auto rest = others(d, i, j);
            rest.push_back({minus(a.members, {v}), a.proposal});
            rest.push_back({plus(b.members, {v}), b.proposal});
            if (raw_valid(rest, s)) out.insert({kind, i, j, describe(s, b.proposal), {v}, {}});
          }
          break;
        }
        case TransitionKind::follow: {
          if (sq_pair || a.empty() || b.empty()) break;
          auto rest = others(d, i, j);
          rest.push_back({plus(a.members, b.members), b.proposal});
          if (raw_valid(rest, s)) out.insert({kind, i, j, describe(s, b.proposal), a.members, b.members});
          break;
        }
        case TransitionKind::merge: {
          if (i > j || sq_pair || a.empty() || b.empty()) break;
          for (const auto& p : xs) {
            if (raw_is_status_quo(p)) continue;
            auto rest = others(d, i, j);
            rest.push_back({plus(a.members, b.members), p});
            if (raw_valid(rest, s)) out.insert({kind, i, j, p.id, a.members, b.members});
          }
          break;
        }
        case TransitionKind::compromise: {
          if (i > j) break;
          for (const auto& p : xs) {
            const auto ap = approvers_of(s, a.members, p);
            const auto bp = approvers_of(s, b.members, p);
            for (unsigned ma = 0; ma < (1u << a.size()); ++ma) {
              const auto m1 = subset_by_mask(a.members, ma);
              if (m1 != ap) continue;
              for (unsigned mb = 0; mb < (1u << b.size()); ++mb) {
                const auto m2 = subset_by_mask(b.members, mb);
                if (m2 != bp) continue;
                const std::size_t formed = m1.size() + m2.size();
                if (formed <= a.size() || formed <= b.size()) continue;
                auto rest = others(d, i, j);
                rest.push_back({plus(m1, m2), p});
                rest.push_back({minus(a.members, m1), a.proposal});
                rest.push_back({minus(b.members, m2), b.proposal});
                if (raw_valid(rest, s)) out.insert({kind, i, j, p.id, m1, m2});
              }
            }
          }
          break;
        }
        case TransitionKind::subsume: {
          for (const auto& p : xs) {
            if (approvers_of(s, b.members, p) != b.members || b.empty()) continue;
            const auto ap = approvers_of(s, a.members, p);
            for (unsigned ma = 1; ma < (1u << a.size()); ++ma) {
              const auto m1 = subset_by_mask(a.members, ma);
              if (m1 != ap || m1.size() + b.size() <= a.size()) continue;
              auto rest = others(d, i, j);
              rest.push_back({plus(m1, b.members), p});
              rest.push_back({minus(a.members, m1), a.proposal});
              if (raw_valid(rest, s)) out.insert({kind, i, j, p.id, m1, b.members});
            }
          }
          break;
        }
      }
    }
  }
  return out;
}

std::vector<EnumerationMismatch> compare_enumerations(const CoalitionStructure& d, const DeliberationSpace& s,
                                                      const std::vector<TransitionKind>& kinds) {
  std::vector<EnumerationMismatch> out;
  for (auto kind : kinds) {
    std::set<TransitionKey> module;
    for (const auto& t : enumerate(kind, d, s)) module.insert(key_of(t, s));
    const auto oracle = naive_transitions(kind, d, s);
    if (module == oracle) continue;
    EnumerationMismatch mm{kind, canonical_key(d, s), {}, {}};
    std::set_difference(module.begin(), module.end(), oracle.begin(), oracle.end(),
                        std::back_inserter(mm.only_in_module));
    std::set_difference(oracle.begin(), oracle.end(), module.begin(), module.end(),
                        std::back_inserter(mm.only_in_oracle));
    out.push_back(std::move(mm));
  }
  return out;
}

ExploreReport explore(const DeliberationSpace& s, const CoalitionStructure& start,
                      const std::vector<TransitionKind>& kinds, const ExploreOptions& options) {
  if (s.is_continuous())
    throw Error(ErrorKind::unsupported, "state-graph exploration needs a finite proposal set");
  if (s.agent_count() > options.agent_cap)
    throw Error(ErrorKind::cap_exceeded, "exploration is capped at " + std::to_string(options.agent_cap) + " agents");

  ExploreReport report;
  report.max_support = naive_max_support(s).max_support;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::optional<std::pair<std::size_t, Transition>>> parent;

  report.states.push_back(canonicalize(start));
  index.emplace(canonical_key(report.states[0], s), 0);
  parent.emplace_back();
  std::deque<std::size_t> queue{0};

  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    const CoalitionStructure current = report.states[at];

    if (options.cross_check) {
      auto mm = compare_enumerations(current, s, kinds);
      report.mismatches.insert(report.mismatches.end(), mm.begin(), mm.end());
    }

    std::vector<Transition> moves;
    for (auto kind : kinds) {
      auto found = enumerate(kind, current, s);
      moves.insert(moves.end(), found.begin(), found.end());
    }
    if (moves.empty()) {
      report.terminals.push_back(at);
      if (!is_successful(current, s, report.max_support)) {
        report.all_terminals_successful = false;
        // BFS order: the first unsuccessful terminal reached is a nearest one.
        if (!report.unsuccessful_witness) {
          std::vector<std::pair<std::size_t, Transition>> path;
          for (std::size_t k = at; parent[k]; k = parent[k]->first) path.push_back(*parent[k]);
          std::reverse(path.begin(), path.end());
          report.unsuccessful_witness = std::move(path);
        }
      }
      continue;
    }

    for (const auto& t : moves) {
      CoalitionStructure next = canonicalize(apply(current, t, s));
      const bool additive = t.kind == TransitionKind::single_agent || t.kind == TransitionKind::follow ||
                            t.kind == TransitionKind::merge;
      const bool ordered = additive ? potential(next) > potential(current)
                                    : lex_less(signature(current), signature(next));
      if (!ordered) ++report.order_violations;
      auto key = canonical_key(next, s);
      std::size_t to;
      if (auto it = index.find(key); it != index.end()) {
        to = it->second;
      } else {
        if (report.states.size() >= options.state_cap) {
          report.cap_exceeded = true;
          continue;
        }
        to = report.states.size();
        report.states.push_back(std::move(next));
        index.emplace(std::move(key), to);
        parent.emplace_back(std::make_pair(at, t));
        queue.push_back(to);
      }
      report.edges.push_back({at, to, t.kind});
    }
  }

  // Kahn's algorithm over the discovered graph.
  std::vector<std::size_t> indegree(report.states.size(), 0);
  std::vector<std::vector<std::size_t>> out(report.states.size());
  for (const auto& e : report.edges) {
    ++indegree[e.to];
    out[e.from].push_back(e.to);
  }
  std::vector<std::size_t> ready;
  for (std::size_t k = 0; k < indegree.size(); ++k)
    if (indegree[k] == 0) ready.push_back(k);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t k = ready.back();
    ready.pop_back();
    ++removed;
    for (auto to : out[k])
      if (--indegree[to] == 0) ready.push_back(to);
  }
  report.acyclic = removed == report.states.size();
  return report;
}

}  // namespace delib
