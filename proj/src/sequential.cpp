#include "sandlab/sequential.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace sandlab {
namespace {

constexpr std::array<std::string_view, kMoveRuleCount> kRuleNames{"VRd", "VRs", "HRd",
                                                                  "HRs", "BTd", "BTs"};
constexpr std::array<std::string_view, kMoveRuleCount> kRuleTags{"vr_d", "vr_s", "hr_d",
                                                                 "hr_s", "bt_d", "bt_s"};
constexpr std::array<MoveRule, kMoveRuleCount> kRuleOrder{
    MoveRule::kVRd, MoveRule::kVRs, MoveRule::kHRd,
    MoveRule::kHRs, MoveRule::kBTd, MoveRule::kBTs};

Configuration node_key(const Configuration& c, bool quotient) {
  return quotient && !c.is_zero() ? c.shifted(c.lo()) : c;
}

bool horizontal_allowed(Count v, Count l, Count r, HrConvention convention) {
  switch (convention) {
    case HrConvention::kNoHeightOne: return v >= 2;
    case HrConvention::kSummaryStrict: return !(v == 1 && l == 0 && r == 0);
    case HrConvention::kOff: return true;
  }
  return true;
}

void check_policy(const RulesetPolicy& policy) {
  if (policy.bt_height_floor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bt height floor must be >= 1");
  }
}

}  // namespace

std::string_view to_string(MoveRule rule) noexcept {
  return kRuleNames[static_cast<std::size_t>(rule)];
}

std::optional<MoveRule> move_rule_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kMoveRuleCount; ++i) {
    if (name == kRuleNames[i] || name == kRuleTags[i]) return kRuleOrder[i];
  }
  return std::nullopt;
}

std::string to_string(const SequentialMove& move) {
  return std::string(to_string(move.rule)) + "@" + std::to_string(move.site);
}

RuleMask parse_rule_mask(std::string_view text) {
  RuleMask mask;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok == "vr") {
      mask = mask | RuleMask::vertical();
    } else if (tok == "hr") {
      mask = mask | RuleMask::horizontal();
    } else if (tok == "bt") {
      mask = mask | RuleMask::bottom_up();
    } else if (tok == "all") {
      mask = RuleMask::all();
    } else if (auto r = move_rule_from_name(tok)) {
      mask = mask | RuleMask{*r};
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown rule tag '" + std::string(tok) + "'");
    }
    pos = comma + 1;
  }
  return mask;
}

std::string to_string(RuleMask mask) {
  std::string out;
  for (std::size_t i = 0; i < kMoveRuleCount; ++i) {
    if (!mask.contains(kRuleOrder[i])) continue;
    if (!out.empty()) out += ',';
    out += kRuleTags[i];
  }
  return out;
}

bool guard_holds(const Configuration& c, const SequentialMove& move, const RulesetPolicy& policy) {
  const Cell x = move.site;
  const Count v = c.at(x);
  const Count l = c.at(x - 1);
  const Count r = c.at(x + 1);
  switch (move.rule) {
    case MoveRule::kVRd: return v - r >= 2;
    case MoveRule::kVRs: return v - l >= 2;
    case MoveRule::kHRd: return v == r + 1 && horizontal_allowed(v, l, r, policy.hr_convention);
    case MoveRule::kHRs: return v == l + 1 && horizontal_allowed(v, l, r, policy.hr_convention);
    case MoveRule::kBTd: return v >= policy.bt_height_floor && v >= 1 && v == r;
    case MoveRule::kBTs: return v >= policy.bt_height_floor && v >= 1 && v == l;
  }
  return false;
}

std::vector<SequentialMove> applicable_moves(const Configuration& c, const RulesetPolicy& policy) {
  check_policy(policy);
  std::vector<SequentialMove> out;
  if (c.is_zero()) return out;
  // Every guard needs a granule at the source cell.
  for (Cell x = c.lo(); x <= c.hi(); ++x) {
    if (c.at(x) == 0) continue;
    for (MoveRule rule : kRuleOrder) {
      if (!policy.enabled.contains(rule)) continue;
      const SequentialMove m{rule, x};
      if (guard_holds(c, m, policy)) out.push_back(m);
    }
  }
  return out;
}

Configuration apply_move(const Configuration& c, const SequentialMove& move,
                         const RulesetPolicy& policy) {
  check_policy(policy);
  if (!guard_holds(c, move, policy)) {
    throw Error(ErrorCode::kInapplicableMove, to_string(move) + " does not apply");
  }
  const Cell dst = move.destination();
  const Cell lo = c.is_zero() ? std::min(move.site, dst) : std::min({c.lo(), move.site, dst});
  const Cell hi = c.is_zero() ? std::max(move.site, dst) : std::max({c.hi(), move.site, dst});
  std::vector<Count> v = c.dense(LatticeWindow{lo, hi});
  v[static_cast<std::size_t>(move.site - lo)] -= 1;
  v[static_cast<std::size_t>(dst - lo)] += 1;
  return Configuration::normalize(std::move(v), lo);
}

std::optional<std::size_t> TransitionDigraph::find(const Configuration& c) const {
  auto it = index.find(node_key(c, policy.quotient_translations));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> TransitionDigraph::out_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == node) out.push_back(i);
  }
  return out;
}

TransitionDigraph explore_digraph(const Configuration& c0, const RulesetPolicy& policy,
                                  std::size_t node_cap, std::optional<std::size_t> depth_cap) {
  check_policy(policy);
  if (node_cap == 0) throw Error(ErrorCode::kInvalidArgument, "node cap must be positive");
  const bool quotient = policy.quotient_translations;

  TransitionDigraph d;
  d.root = c0;
  d.policy = policy;
  d.nodes.push_back(c0);
  d.levels.push_back(0);
  d.index.emplace(node_key(c0, quotient), 0);

  for (std::size_t cur = 0; cur < d.nodes.size(); ++cur) {
    const std::vector<SequentialMove> moves = applicable_moves(d.nodes[cur], policy);
    if (moves.empty()) {
      d.equilibria.push_back(cur);
      continue;
    }
    if (depth_cap && d.levels[cur] >= *depth_cap) {
      d.depth_cap_reached = true;
      continue;
    }
    for (const SequentialMove& m : moves) {
      Configuration next = apply_move(d.nodes[cur], m, policy);
      Configuration key = node_key(next, quotient);
      auto it = d.index.find(key);
      std::size_t to;
      if (it != d.index.end()) {
        to = it->second;
      } else {
        if (d.nodes.size() >= node_cap) {
          d.node_cap_reached = true;
          continue;
        }
        to = d.nodes.size();
        d.index.emplace(std::move(key), to);
        d.nodes.push_back(std::move(next));
        d.levels.push_back(d.levels[cur] + 1);
      }
      d.edges.push_back({cur, m, to});
    }
  }
  return d;
}

std::vector<MovePath> enumerate_paths(const TransitionDigraph& d, const Configuration& target,
                                      std::size_t max_paths) {
  std::vector<MovePath> out;
  const auto goal = d.find(target);
  if (!goal || max_paths == 0) return out;
  if (*goal == 0) {
    out.emplace_back();
    return out;
  }

  std::vector<std::vector<std::size_t>> adjacency(d.nodes.size());
  for (std::size_t i = 0; i < d.edges.size(); ++i) adjacency[d.edges[i].from].push_back(i);

  // Iterative DFS over (node, next edge cursor).
  std::vector<bool> on_path(d.nodes.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  MovePath current;
  on_path[0] = true;
  while (!stack.empty() && out.size() < max_paths) {
    auto& [node, cursor] = stack.back();
    if (cursor == adjacency[node].size()) {
      on_path[node] = false;
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const DigraphEdge& e = d.edges[adjacency[node][cursor++]];
    if (on_path[e.to]) continue;
    if (e.to == *goal) {
      current.push_back(e.move);
      out.push_back(current);
      current.pop_back();
      continue;
    }
    on_path[e.to] = true;
    current.push_back(e.move);
    stack.emplace_back(e.to, 0);
  }
  return out;
}

Configuration replay(const Configuration& source, const MovePath& path,
                     const RulesetPolicy& policy) {
  Configuration c = source;
  for (const SequentialMove& m : path) c = apply_move(c, m, policy);
  return c;
}

MaximalPathSummary maximal_paths(const TransitionDigraph& d) {
  const std::size_t n = d.nodes.size();
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const DigraphEdge& e : d.edges) {
    children[e.from].push_back(e.to);
    ++indegree[e.to];
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const std::size_t u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (std::size_t v : children[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  if (order.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "digraph has a cycle; maximal paths are unbounded");
  }

  std::vector<bool> is_equilibrium(n, false);
  for (std::size_t e : d.equilibria) is_equilibrium[e] = true;

  std::vector<std::uint64_t> count(n, 0);
  std::vector<std::set<std::size_t>> lengths(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t u = *it;
    if (is_equilibrium[u]) {
      count[u] = 1;
      lengths[u].insert(0);
      continue;
    }
    for (std::size_t v : children[u]) {
      count[u] += count[v];
      for (std::size_t len : lengths[v]) lengths[u].insert(len + 1);
    }
  }
  return {count.empty() ? 0 : count[0], lengths.empty() ? std::set<std::size_t>{} : lengths[0]};
}

namespace {

struct SearchNode {
  Configuration config;
  std::size_t level;
  std::vector<std::pair<std::size_t, SequentialMove>> preds;
};

void collect_paths(const std::vector<SearchNode>& nodes, std::size_t node, MovePath& suffix,
                   std::vector<MovePath>& out, std::size_t max_paths) {
  if (out.size() >= max_paths) return;
  if (nodes[node].preds.empty()) {
    out.emplace_back(suffix.rbegin(), suffix.rend());
    return;
  }
  for (const auto& [pred, move] : nodes[node].preds) {
    suffix.push_back(move);
    collect_paths(nodes, pred, suffix, out, max_paths);
    suffix.pop_back();
    if (out.size() >= max_paths) return;
  }
}

constexpr std::size_t kQuotientFallbackCap = 200'000;

}  // namespace

DecompositionResult decompose_parallel_transition(const Configuration& source,
                                                  const Configuration& target,
                                                  const RulesetPolicy& policy,
                                                  std::size_t depth_cap, std::size_t max_paths,
                                                  std::size_t node_cap) {
  check_policy(policy);
  DecompositionResult result;
  if (source == target) {
    result.reachable = true;
    result.paths.emplace_back();
    result.explored_nodes = 1;
    return result;
  }
  if (total_granules(source) != total_granules(target)) {
    // Every move conserves the total.
    result.explored_nodes = 0;
    return result;
  }

  std::vector<SearchNode> nodes;
  std::unordered_map<Configuration, std::size_t, SequenceHash> index;
  nodes.push_back({source, 0, {}});
  index.emplace(source, 0);

  std::optional<std::size_t> goal;
  bool truncated = false;
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    const std::size_t level = nodes[cur].level;
    // All predecessors of the goal sit one level above it.
    if (goal && level >= nodes[*goal].level) break;
    if (level >= depth_cap) {
      if (!applicable_moves(nodes[cur].config, policy).empty()) truncated = true;
      continue;
    }
    for (const SequentialMove& m : applicable_moves(nodes[cur].config, policy)) {
      Configuration next = apply_move(nodes[cur].config, m, policy);
      auto it = index.find(next);
      if (it != index.end()) {
        SearchNode& seen = nodes[it->second];
        if (seen.level == level + 1) seen.preds.emplace_back(cur, m);
        continue;
      }
      if (nodes.size() >= node_cap) {
        truncated = true;
        continue;
      }
      const std::size_t id = nodes.size();
      const bool is_goal = next == target;
      index.emplace(next, id);
      nodes.push_back({std::move(next), level + 1, {{cur, m}}});
      if (is_goal) goal = id;
    }
  }
  result.explored_nodes = nodes.size();

  if (goal) {
    result.reachable = true;
    MovePath suffix;
    collect_paths(nodes, *goal, suffix, result.paths, max_paths);
    std::ranges::sort(result.paths, [](const MovePath& a, const MovePath& b) {
      return std::ranges::lexicographical_compare(
          a, b, [](const SequentialMove& x, const SequentialMove& y) {
            return std::pair(x.rule, x.site) < std::pair(y.rule, y.site);
          });
    });
    return result;
  }
  if (!truncated) return result;

  RulesetPolicy quotient = policy;
  quotient.quotient_translations = true;
  const TransitionDigraph closure =
      explore_digraph(source, quotient, std::min(node_cap, kQuotientFallbackCap));
  if (!closure.node_cap_reached && !closure.find(target)) return result;
  result.budget_exceeded = true;
  return result;
}

bool NecessityReport::any_budget_exceeded() const noexcept {
  return std::ranges::any_of(families,
                             [](const FamilyReachability& f) { return f.result.budget_exceeded; });
}

NecessityReport necessity_analysis(const Configuration& source, const Configuration& target,
                                   std::size_t depth_cap) {
  const std::array<std::pair<std::string, RuleMask>, 3> families{{
      {"VR", RuleMask::vertical()},
      {"VR+HR", RuleMask::vertical() | RuleMask::horizontal()},
      {"VR+HR+BT", RuleMask::all()},
  }};
  NecessityReport report;
  for (const auto& [name, mask] : families) {
    DecompositionResult r =
        decompose_parallel_transition(source, target, RulesetPolicy::only(mask), depth_cap);
    if (r.reachable && !report.minimal_family) report.minimal_family = report.families.size();
    report.families.push_back({name, mask, std::move(r)});
  }
  return report;
}

std::size_t default_depth_cap(Count total) noexcept {
  const auto n = static_cast<std::size_t>(total);
  return std::max<std::size_t>(2 * n * n, 1);
}

SpmOrbitSummary sequential_spm_orbit(const Configuration& c0, std::size_t depth_cap) {
  if (!is_non_increasing(c0)) {
    throw Error(ErrorCode::kNotOrderedPartition, "initial state is not non-increasing");
  }
  SpmOrbitSummary out;
  out.digraph = explore_digraph(c0, RulesetPolicy::only({MoveRule::kVRd}), kDefaultNodeCap,
                                depth_cap);
  if (out.digraph.node_cap_reached || out.digraph.depth_cap_reached) {
    throw Error(ErrorCode::kBoundExceeded, "sequential closure truncated by its caps");
  }
  if (out.digraph.equilibria.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected one equilibrium, found " + std::to_string(out.digraph.equilibria.size()));
  }
  out.equilibrium = out.digraph.nodes[out.digraph.equilibria.front()];
  MaximalPathSummary paths = maximal_paths(out.digraph);
  out.maximal_path_lengths = std::move(paths.lengths);
  out.maximal_path_count = paths.path_count;
  return out;
}

}  // namespace sandlab
