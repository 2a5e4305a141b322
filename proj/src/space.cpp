#include "delib/space.hpp"

#include <algorithm>
#include <cmath>

#include "delib/errors.hpp"

namespace delib {

namespace {

void check_location(const Metric& metric, const Location& at, const std::string& field) {
  if (metric.is_euclidean()) {
    const auto* p = std::get_if<Point>(&at);
    if (!p) throw Error(ErrorKind::validation, "expected coordinates", field, "location_kind");
    if (p->dim() != metric.dimension())
      throw Error(ErrorKind::validation,
                  "expected " + std::to_string(metric.dimension()) + " coordinates", field,
                  "dimension");
    for (double c : p->coords)
      if (!std::isfinite(c))
        throw Error(ErrorKind::validation, "non-finite coordinate", field, "finite");
  } else {
    const auto* n = std::get_if<NodeRef>(&at);
    if (!n || n->index >= metric.nodes().size())
      throw Error(ErrorKind::validation, "expected a point id of the metric", field,
                  "location_kind");
  }
}

// Lexicographic k-combinations of [0, n), in order.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

DeliberationSpace::DeliberationSpace(Metric metric, std::vector<Agent> agents, Location status_quo,
                                     std::optional<std::vector<Proposal>> proposals,
                                     std::string name)
    : name_(std::move(name)), metric_(std::move(metric)), agents_(std::move(agents)) {
  check_location(metric_, status_quo, "status_quo");
  status_quo_ = Proposal{std::string(kStatusQuoId), status_quo};

  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const std::string field = "agents[" + std::to_string(i) + "]";
    if (agents_[i].id.empty())
      throw Error(ErrorKind::validation, "empty agent id", field + ".id", "non_empty");
    check_location(metric_, agents_[i].at, field + ".at");
    for (std::size_t j = 0; j < i; ++j)
      if (agents_[j].id == agents_[i].id)
        throw Error(ErrorKind::validation, "duplicate agent id '" + agents_[i].id + "'",
                    field + ".id", "unique_ids");
  }

  if (!proposals) {
    if (!metric_.is_euclidean())
      throw Error(ErrorKind::validation, "a continuous proposal space needs a euclidean metric",
                  "proposals", "continuous_requires_euclidean");
    continuous_ = true;
  } else {
    proposals_.push_back(status_quo_);
    for (std::size_t i = 0; i < proposals->size(); ++i) {
      auto& p = (*proposals)[i];
      const std::string field = "proposals[" + std::to_string(i) + "]";
      check_location(metric_, p.at, field + ".at");
      if (p.id.empty())
        throw Error(ErrorKind::validation, "empty proposal id", field + ".id", "non_empty");
      if (p.id == kStatusQuoId) {
        if (!(p.at == status_quo_.at))
          throw Error(ErrorKind::validation, "proposal 'r' must sit at the status quo",
                      field + ".at", "status_quo_location");
        continue;
      }
      for (const auto& q : proposals_)
        if (q.id == p.id)
          throw Error(ErrorKind::validation, "duplicate proposal id '" + p.id + "'",
                      field + ".id", "unique_ids");
      proposals_.push_back(std::move(p));
    }
  }

  sq_distance_.resize(agents_.size());
  has_approvals_.resize(agents_.size());
  for (std::size_t v = 0; v < agents_.size(); ++v) {
    sq_distance_[v] = delib::distance(agents_[v].at, status_quo_.at, metric_);
    if (continuous_) {
      has_approvals_[v] = sq_distance_[v] > 0.0;
    } else {
      approval_.emplace_back(proposals_.size(), false);
      bool any = false;
      for (std::size_t x = 1; x < proposals_.size(); ++x) {
        const bool ok = delib::distance(agents_[v].at, proposals_[x].at, metric_) < sq_distance_[v];
        approval_[v][x] = ok;
        any = any || ok;
      }
      has_approvals_[v] = any;
    }
  }
}

std::optional<AgentIndex> DeliberationSpace::find_agent(std::string_view id) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i].id == id) return i;
  return std::nullopt;
}

const Point& DeliberationSpace::agent_point(AgentIndex v) const {
  const auto* p = std::get_if<Point>(&agents_.at(v).at);
  if (!p) throw Error(ErrorKind::unsupported, "agent coordinates need a euclidean metric");
  return *p;
}

const std::vector<Proposal>& DeliberationSpace::proposals() const {
  if (continuous_)
    throw Error(ErrorKind::unsupported, "the proposal set of a continuous space is not enumerable");
  return proposals_;
}

std::optional<std::size_t> DeliberationSpace::find_proposal(std::string_view id) const {
  for (std::size_t i = 0; i < proposals_.size(); ++i)
    if (proposals_[i].id == id) return i;
  return std::nullopt;
}

bool DeliberationSpace::is_status_quo(const Proposal& p) const {
  return p.id == kStatusQuoId || p.at == status_quo_.at;
}

double DeliberationSpace::distance(const Location& a, const Location& b) const {
  return delib::distance(a, b, metric_);
}

bool DeliberationSpace::approves(AgentIndex v, const Proposal& p) const {
  if (!continuous_ && !p.id.empty()) {
    if (auto x = find_proposal(p.id); x && proposals_[*x].at == p.at) return approval_.at(v)[*x];
  }
  return delib::distance(agents_.at(v).at, p.at, metric_) < sq_distance_.at(v);
}

Proposal DeliberationSpace::resolve_proposal(std::string_view id) const {
  if (id == kStatusQuoId) return status_quo_;
  if (auto x = find_proposal(id)) return proposals_[*x];
  throw Error(ErrorKind::unknown_id, "unknown proposal '" + std::string(id) + "'");
}

std::vector<std::string> approval_set(const DeliberationSpace& s, AgentIndex v) {
  const auto& xs = s.proposals();
  std::vector<std::string> out;
  for (std::size_t x = 1; x < xs.size(); ++x)
    if (s.approves(v, xs[x])) out.push_back(xs[x].id);
  return out;
}

std::vector<AgentIndex> supporters(const DeliberationSpace& s, std::span<const AgentIndex> members,
                                   const Proposal& p) {
  std::vector<AgentIndex> out;
  for (AgentIndex v : members)
    if (s.approves(v, p)) out.push_back(v);
  return out;
}

bool approval_balls_meet(const DeliberationSpace& s, AgentIndex v, AgentIndex w) {
  const double gap = distance(s.agent_point(v), s.agent_point(w));
  return gap < s.status_quo_distance(v) + s.status_quo_distance(w);
}

SubsetFeasibility largest_feasible_subset(const DeliberationSpace& s,
                                          std::span<const AgentIndex> candidates) {
  std::vector<AgentIndex> pool;
  for (AgentIndex v : candidates)
    if (s.has_approvals(v)) pool.push_back(v);
  SubsetFeasibility out;
  if (pool.empty()) return out;

  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> meet(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      meet[i][j] = meet[j][i] = approval_balls_meet(s, pool[i], pool[j]);

  const Point& r = std::get<Point>(s.status_quo().at);
  std::vector<Point> pts;
  for (std::size_t k = n; k >= 1; --k) {
    const bool found = for_each_combination(n, k, [&](const std::vector<std::size_t>& idx) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          if (!meet[idx[a]][idx[b]]) return false;
      pts.clear();
      for (auto i : idx) pts.push_back(s.agent_point(pool[i]));
      auto res = best_common_proposal(pts, r);
      if (!res.feasible()) return false;
      out.size = k;
      out.subset.clear();
      for (auto i : idx) out.subset.push_back(pool[i]);
      out.witness = std::move(res.witness);
      return true;
    });
    if (found) break;
  }
  return out;
}

SupportReport max_support(const DeliberationSpace& s, std::size_t oracle_cap) {
  SupportReport report;
  if (!s.is_continuous()) {
    const auto& xs = s.proposals();
    std::vector<std::size_t> count(xs.size(), 0);
    for (std::size_t x = 1; x < xs.size(); ++x)
      for (AgentIndex v = 0; v < s.agent_count(); ++v)
        if (s.approves(v, xs[x])) ++count[x];
    for (std::size_t x = 1; x < xs.size(); ++x) report.max_support = std::max(report.max_support, count[x]);
    if (report.max_support == 0) return report;
    for (std::size_t x = 1; x < xs.size(); ++x)
      if (count[x] == report.max_support) report.witnesses.push_back(xs[x]);
    return report;
  }

  if (s.agent_count() > oracle_cap)
    throw Error(ErrorKind::cap_exceeded, "continuous max_support over " +
                                             std::to_string(s.agent_count()) +
                                             " agents exceeds the oracle cap of " +
                                             std::to_string(oracle_cap));
  std::vector<AgentIndex> all(s.agent_count());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  auto best = largest_feasible_subset(s, all);
  report.max_support = best.size;
  if (best.witness) report.witnesses.push_back(Proposal{{}, *best.witness});
  return report;
}

std::string describe(const DeliberationSpace& s, const Proposal& p) {
  if (!p.id.empty()) return p.id;
  if (const auto* pt = std::get_if<Point>(&p.at)) return format_point(*pt);
  return s.metric().nodes().at(std::get<NodeRef>(p.at).index);
}

}  // namespace delib
