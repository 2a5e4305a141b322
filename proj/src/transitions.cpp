#include "delib/transitions.hpp"

#include <algorithm>
#include <iterator>

#include "delib/errors.hpp"

namespace delib {

namespace {

bool is_active(const Coalition& c, const DeliberationSpace& s) {
  return !c.empty() && !s.is_status_quo(c.proposal);
}

bool all_approve(const DeliberationSpace& s, std::span<const AgentIndex> members, const Proposal& p) {
  return std::all_of(members.begin(), members.end(), [&](AgentIndex v) { return s.approves(v, p); });
}

std::vector<AgentIndex> united(const Coalition& a, const Coalition& b) {
  std::vector<AgentIndex> u;
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                 std::back_inserter(u));
  return u;
}

std::vector<AgentIndex> without(const std::vector<AgentIndex>& from, const std::vector<AgentIndex>& drop) {
  std::vector<AgentIndex> out;
  std::set_difference(from.begin(), from.end(), drop.begin(), drop.end(), std::back_inserter(out));
  return out;
}

const Point& status_quo_point(const DeliberationSpace& s) { return std::get<Point>(s.status_quo().at); }

// Approvers of p on both sides; true when they satisfy the compromise size
// condition against both sources.
bool compromise_split(const DeliberationSpace& s, const Coalition& a, const Coalition& b, const Proposal& p,
                      std::vector<AgentIndex>& movers_a, std::vector<AgentIndex>& movers_b) {
  movers_a = supporters(s, a.members, p);
  movers_b = supporters(s, b.members, p);
  const std::size_t formed = movers_a.size() + movers_b.size();
  return formed > a.size() && formed > b.size();
}

template <typename Fn>
void for_each_subset_of_size(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n || k == 0) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Candidate compromise targets for a pair on a continuous space: one witness
// per feasible subset of C1 u C2 larger than both sources, deduplicated by the
// witness's full approver set.
std::vector<Proposal> synthesize_compromise_targets(const DeliberationSpace& s, const Coalition& a,
                                                    const Coalition& b) {
  const auto pool = united(a, b);
  if (pool.size() > kCompromiseMemberCap)
    throw Error(ErrorKind::cap_exceeded, "compromise search over " + std::to_string(pool.size()) +
                                             " members exceeds the cap of " +
                                             std::to_string(kCompromiseMemberCap));
  const std::size_t n = pool.size();
  const std::size_t floor = std::max(a.size(), b.size());
  std::vector<std::vector<bool>> meet(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) meet[i][j] = meet[j][i] = approval_balls_meet(s, pool[i], pool[j]);

  std::vector<Proposal> targets;
  std::vector<std::vector<AgentIndex>> seen;
  std::vector<Point> pts;
  for (std::size_t k = n; k > floor; --k) {
    for_each_subset_of_size(n, k, [&](const std::vector<std::size_t>& idx) {
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = x + 1; y < k; ++y)
          if (!meet[idx[x]][idx[y]]) return;
      pts.clear();
      for (auto i : idx) pts.push_back(s.agent_point(pool[i]));
      auto res = best_common_proposal(pts, status_quo_point(s));
      if (!res.feasible()) return;
      Proposal p{{}, res.witness};
      auto movers = supporters(s, pool, p);
      if (movers.size() <= floor) return;
      if (std::find(seen.begin(), seen.end(), movers) != seen.end()) return;
      seen.push_back(std::move(movers));
      targets.push_back(std::move(p));
    });
  }
  return targets;
}

}  // namespace

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::single_agent: return "single_agent";
    case TransitionKind::follow: return "follow";
    case TransitionKind::merge: return "merge";
    case TransitionKind::compromise: return "compromise";
    case TransitionKind::subsume: return "subsume";
  }
  return "unknown";
}

std::optional<TransitionKind> parse_kind(std::string_view name) {
  for (auto k : kAllKinds)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::vector<Transition> enumerate_single_agent(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::vector<Transition> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!is_active(d[i], s)) continue;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j || !is_active(d[j], s) || d[j].size() < d[i].size()) continue;
      for (AgentIndex v : d[i].members)
        if (s.approves(v, d[j].proposal))
          out.push_back({TransitionKind::single_agent, i, j, d[j].proposal, {v}, {}});
    }
  }
  return out;
}

std::vector<Transition> enumerate_follow(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::vector<Transition> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!is_active(d[i], s)) continue;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j || !is_active(d[j], s)) continue;
      if (all_approve(s, d[i].members, d[j].proposal))
        out.push_back({TransitionKind::follow, i, j, d[j].proposal, d[i].members, d[j].members});
    }
  }
  return out;
}

std::vector<Transition> enumerate_merge(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::vector<Transition> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!is_active(d[i], s)) continue;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (!is_active(d[j], s)) continue;
      const auto pool = united(d[i], d[j]);
      if (!s.is_continuous()) {
        const auto& xs = s.proposals();
        for (std::size_t x = 1; x < xs.size(); ++x)
          if (all_approve(s, pool, xs[x]))
            out.push_back({TransitionKind::merge, i, j, xs[x], d[i].members, d[j].members});
        continue;
      }
      std::vector<Point> pts;
      for (AgentIndex v : pool) pts.push_back(s.agent_point(v));
      auto res = best_common_proposal(pts, status_quo_point(s));
      Proposal p{{}, res.witness};
      if (res.feasible() && all_approve(s, pool, p))
        out.push_back({TransitionKind::merge, i, j, std::move(p), d[i].members, d[j].members});
    }
  }
  return out;
}

std::vector<Transition> enumerate_compromise(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::vector<Transition> out;
  std::vector<AgentIndex> ma, mb;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!is_active(d[i], s)) continue;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (!is_active(d[j], s)) continue;
      if (!s.is_continuous()) {
        const auto& xs = s.proposals();
        for (std::size_t x = 1; x < xs.size(); ++x)
          if (compromise_split(s, d[i], d[j], xs[x], ma, mb))
            out.push_back({TransitionKind::compromise, i, j, xs[x], ma, mb});
        continue;
      }
      for (auto& p : synthesize_compromise_targets(s, d[i], d[j]))
        if (compromise_split(s, d[i], d[j], p, ma, mb))
          out.push_back({TransitionKind::compromise, i, j, std::move(p), ma, mb});
    }
  }
  return out;
}

std::vector<Transition> enumerate_subsume(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::vector<Transition> out;
  for (const auto& t : enumerate_compromise(d, s)) {
    const auto& a = d[t.first];
    const auto& b = d[t.second];
    // `b` moves in full, `a` contributes its approvers
    if (t.movers_second == b.members && !t.movers_first.empty() &&
        t.movers_first.size() + b.size() > a.size())
      out.push_back({TransitionKind::subsume, t.first, t.second, t.target, t.movers_first, b.members});
    if (t.movers_first == a.members && !t.movers_second.empty() &&
        t.movers_second.size() + a.size() > b.size())
      out.push_back({TransitionKind::subsume, t.second, t.first, t.target, t.movers_second, a.members});
  }
  return out;
}

std::vector<Transition> enumerate(TransitionKind kind, const CoalitionStructure& d, const DeliberationSpace& s) {
  switch (kind) {
    case TransitionKind::single_agent: return enumerate_single_agent(d, s);
    case TransitionKind::follow: return enumerate_follow(d, s);
    case TransitionKind::merge: return enumerate_merge(d, s);
    case TransitionKind::compromise: return enumerate_compromise(d, s);
    case TransitionKind::subsume: return enumerate_subsume(d, s);
  }
  return {};
}

namespace {

[[noreturn]] void stale(const Transition& t, const std::string& why) {
  throw Error(ErrorKind::stale_transition,
              std::string(to_string(t.kind)) + " transition no longer applies: " + why);
}

void check_target(const DeliberationSpace& s, const Transition& t) {
  if (s.is_status_quo(t.target)) stale(t, "target is the status quo");
  if (!s.is_continuous()) {
    auto x = s.find_proposal(t.target.id);
    if (t.target.id.empty() || !x || !(s.proposals()[*x].at == t.target.at))
      stale(t, "target is not in the proposal set");
  }
}

void revalidate(const CoalitionStructure& d, const Transition& t, const DeliberationSpace& s) {
  if (t.first >= d.size() || t.second >= d.size() || t.first == t.second)
    stale(t, "coalition indices out of range");
  const auto& a = d[t.first];
  const auto& b = d[t.second];
  std::vector<AgentIndex> ma, mb;
  switch (t.kind) {
    case TransitionKind::single_agent: {
      if (!is_active(a, s) || !is_active(b, s)) stale(t, "status-quo or empty coalition");
      if (t.movers_first.size() != 1 || !t.movers_second.empty()) stale(t, "exactly one mover expected");
      const AgentIndex v = t.movers_first.front();
      if (!std::binary_search(a.members.begin(), a.members.end(), v)) stale(t, "mover not in source");
      if (b.size() < a.size()) stale(t, "destination smaller than source");
      if (!(t.target == b.proposal) || !s.approves(v, b.proposal)) stale(t, "mover does not approve destination");
      return;
    }
    case TransitionKind::follow:
      if (!is_active(a, s) || !is_active(b, s)) stale(t, "status-quo or empty coalition");
      if (!(t.target == b.proposal)) stale(t, "target differs from the followed proposal");
      if (!all_approve(s, a.members, b.proposal)) stale(t, "follower does not approve");
      if (t.movers_first != a.members || t.movers_second != b.members) stale(t, "movers differ");
      return;
    case TransitionKind::merge:
      if (!is_active(a, s) || !is_active(b, s)) stale(t, "status-quo or empty coalition");
      check_target(s, t);
      if (!all_approve(s, a.members, t.target) || !all_approve(s, b.members, t.target))
        stale(t, "some member does not approve the target");
      if (t.movers_first != a.members || t.movers_second != b.members) stale(t, "movers differ");
      return;
    case TransitionKind::compromise:
      if (a.empty() || b.empty()) stale(t, "empty coalition");
      check_target(s, t);
      if (!compromise_split(s, a, b, t.target, ma, mb)) stale(t, "new coalition not larger than both sources");
      if (ma != t.movers_first || mb != t.movers_second) stale(t, "movers are not exactly the approvers");
      return;
    case TransitionKind::subsume:
      if (a.empty() || b.empty()) stale(t, "empty coalition");
      check_target(s, t);
      if (!all_approve(s, b.members, t.target) || t.movers_second != b.members)
        stale(t, "subsumed coalition does not move in full");
      ma = supporters(s, a.members, t.target);
      if (ma.empty() || ma != t.movers_first) stale(t, "movers are not exactly the approvers");
      if (ma.size() + b.size() <= a.size()) stale(t, "new coalition not larger than the source");
      return;
  }
}

}  // namespace

CoalitionStructure apply(const CoalitionStructure& d, const Transition& t, const DeliberationSpace& s) {
  revalidate(d, t, s);
  CoalitionStructure next = d;
  auto& a = next.coalitions[t.first];
  auto& b = next.coalitions[t.second];
  std::optional<Coalition> formed;
  switch (t.kind) {
    case TransitionKind::single_agent: {
      const AgentIndex v = t.movers_first.front();
      a.members.erase(std::find(a.members.begin(), a.members.end(), v));
      b.members.insert(std::upper_bound(b.members.begin(), b.members.end(), v), v);
      break;
    }
    case TransitionKind::follow:
    case TransitionKind::merge:
      formed = Coalition{united(a, b), t.target};
      a.members.clear();
      b.members.clear();
      break;
    case TransitionKind::compromise:
    case TransitionKind::subsume: {
      Coalition moved{t.movers_first, t.target};
      moved.members.insert(moved.members.end(), t.movers_second.begin(), t.movers_second.end());
      std::sort(moved.members.begin(), moved.members.end());
      formed = std::move(moved);
      a.members = without(a.members, t.movers_first);
      b.members = without(b.members, t.movers_second);
      break;
    }
  }
  std::erase_if(next.coalitions, [](const Coalition& c) { return c.empty(); });
  if (formed) next.coalitions.push_back(std::move(*formed));
  return next;
}

std::optional<std::int64_t> expected_potential_gain(const CoalitionStructure& d, const Transition& t) {
  const auto x = static_cast<std::int64_t>(d[t.first].size());
  const auto y = static_cast<std::int64_t>(d[t.second].size());
  switch (t.kind) {
    case TransitionKind::single_agent: return 2 * (y - x) + 2;
    case TransitionKind::follow:
    case TransitionKind::merge: return 2 * x * y;
    case TransitionKind::subsume: {
      const auto k = static_cast<std::int64_t>(t.movers_first.size());
      return 2 * k * (y - x + k);
    }
    case TransitionKind::compromise: return std::nullopt;
  }
  return std::nullopt;
}

std::string describe(const Transition& t, const CoalitionStructure& d, const DeliberationSpace& s) {
  auto ids = [&](const std::vector<AgentIndex>& m) {
    std::string out = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += ",";
      out += s.agent(m[i]).id;
    }
    return out + "}";
  };
  std::vector<AgentIndex> movers = t.movers_first;
  movers.insert(movers.end(), t.movers_second.begin(), t.movers_second.end());
  std::sort(movers.begin(), movers.end());
  std::string out = std::string(to_string(t.kind)) + " d" + std::to_string(t.first) + ids(d[t.first].members) +
                    " + d" + std::to_string(t.second) + ids(d[t.second].members) + " -> " + ids(movers) +
                    " @ " + describe(s, t.target);
  return out;
}

}  // namespace delib
