#include "delib/coalition.hpp"

#include <algorithm>
#include <cstdio>

namespace delib {

std::string_view to_string(ViolationClause clause) {
  switch (clause) {
    case ViolationClause::unknown_agent: return "unknown_agent";
    case ViolationClause::overlap: return "partition_overlap";
    case ViolationClause::uncovered: return "partition_uncovered";
    case ViolationClause::approval: return "approval";
    case ViolationClause::status_quo_membership: return "status_quo_membership";
    case ViolationClause::unknown_proposal: return "unknown_proposal";
  }
  return "unknown";
}

bool coalition_is_valid(const Coalition& c, const DeliberationSpace& s) {
  const bool sq = s.is_status_quo(c.proposal);
  for (AgentIndex v : c.members) {
    if (v >= s.agent_count()) return false;
    if (sq ? s.has_approvals(v) : !s.approves(v, c.proposal)) return false;
  }
  return true;
}

std::vector<Violation> validate_structure(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::vector<Violation> out;
  std::vector<int> owner(s.agent_count(), -1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& c = d[i];
    if (!s.is_continuous() && !c.proposal.id.empty()) {
      auto x = s.find_proposal(c.proposal.id);
      if (!x || !(s.proposals()[*x].at == c.proposal.at)) {
        out.push_back({ViolationClause::unknown_proposal, i, std::nullopt,
                       "proposal '" + c.proposal.id + "' is not in X"});
        continue;
      }
    } else if (!s.is_continuous() && !s.is_status_quo(c.proposal)) {
      out.push_back({ViolationClause::unknown_proposal, i, std::nullopt,
                     "unnamed proposal on a finite proposal space"});
      continue;
    }
    const bool sq = s.is_status_quo(c.proposal);
    for (AgentIndex v : c.members) {
      if (v >= s.agent_count()) {
        out.push_back({ViolationClause::unknown_agent, i, v, "agent index out of range"});
        continue;
      }
      if (owner[v] >= 0) {
        out.push_back({ViolationClause::overlap, i, v,
                       s.agent(v).id + " also in coalition " + std::to_string(owner[v])});
      } else {
        owner[v] = static_cast<int>(i);
      }
      if (sq && s.has_approvals(v)) {
        out.push_back({ViolationClause::status_quo_membership, i, v,
                       s.agent(v).id + " approves some proposal but backs the status quo"});
      } else if (!sq && !s.approves(v, c.proposal)) {
        out.push_back({ViolationClause::approval, i, v,
                       s.agent(v).id + " does not approve " + describe(s, c.proposal)});
      }
    }
  }
  for (AgentIndex v = 0; v < s.agent_count(); ++v)
    if (owner[v] < 0)
      out.push_back({ViolationClause::uncovered, std::nullopt, v, s.agent(v).id + " is in no coalition"});
  return out;
}

std::uint64_t potential(const CoalitionStructure& d) {
  std::uint64_t sum = 0;
  for (const auto& c : d.coalitions) sum += static_cast<std::uint64_t>(c.size()) * c.size();
  return sum;
}

Signature signature(const CoalitionStructure& d) {
  Signature sig;
  for (const auto& c : d.coalitions)
    if (!c.empty()) sig.sizes.push_back(c.size());
  std::sort(sig.sizes.begin(), sig.sizes.end(), std::greater<>());
  return sig;
}

bool lex_less(const Signature& a, const Signature& b) {
  const std::size_t s = a.sizes.size();
  const std::size_t t = b.sizes.size();
  for (std::size_t j = 0; j < std::min(s, t); ++j) {
    if (a.sizes[j] < b.sizes[j]) return true;
    if (a.sizes[j] > b.sizes[j]) return false;
  }
  return s < t;
}

bool is_successful(const CoalitionStructure& d, const DeliberationSpace& s, std::size_t max_support) {
  if (max_support == 0) return true;
  std::vector<AgentIndex> everyone(s.agent_count());
  for (std::size_t v = 0; v < everyone.size(); ++v) everyone[v] = v;
  for (const auto& c : d.coalitions) {
    if (c.size() != max_support || s.is_status_quo(c.proposal)) continue;
    if (supporters(s, everyone, c.proposal).size() == max_support) return true;
  }
  return false;
}

bool is_successful(const CoalitionStructure& d, const DeliberationSpace& s) {
  return is_successful(d, s, max_support(s).max_support);
}

std::size_t largest_coalition(const CoalitionStructure& d) {
  std::size_t m = 0;
  for (const auto& c : d.coalitions) m = std::max(m, c.size());
  return m;
}

CoalitionStructure canonicalize(const CoalitionStructure& d) {
  CoalitionStructure out;
  for (const auto& c : d.coalitions) {
    if (c.empty()) continue;
    Coalition copy = c;
    std::sort(copy.members.begin(), copy.members.end());
    out.coalitions.push_back(std::move(copy));
  }
  std::sort(out.coalitions.begin(), out.coalitions.end(), [](const Coalition& a, const Coalition& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.members.front() < b.members.front();
  });
  return out;
}

namespace {
std::string proposal_key(const DeliberationSpace& s, const Proposal& p) {
  if (!p.id.empty()) return p.id;
  if (const auto* pt = std::get_if<Point>(&p.at)) {
    std::string k = "@";
    char buf[40];
    for (std::size_t i = 0; i < pt->dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", pt->coords[i]);
      k += buf;
    }
    return k;
  }
  return describe(s, p);
}
}  // namespace

std::string canonical_key(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::string key;
  for (const auto& c : canonicalize(d).coalitions) {
    if (!key.empty()) key += '|';
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      if (i) key += ',';
      key += s.agent(c.members[i]).id;
    }
    key += '@';
    key += proposal_key(s, c.proposal);
  }
  return key;
}

std::string to_string(const Signature& sig) {
  std::string out = "(";
  for (std::size_t i = 0; i < sig.sizes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sig.sizes[i]);
  }
  return out + ")";
}

std::string describe(const CoalitionStructure& d, const DeliberationSpace& s) {
  std::string out;
  for (const auto& c : d.coalitions) {
    if (!out.empty()) out += "  ";
    out += "({";
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      if (i) out += ",";
      out += s.agent(c.members[i]).id;
    }
    out += "}, " + describe(s, c.proposal) + ")";
  }
  return out;
}

}  // namespace delib
