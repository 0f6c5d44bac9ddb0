#pragma once

// One-granule sequential rewrites (vertical, horizontal and bottom-up jump,
// each in both directions), transition digraphs and reachability search.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sandlab/pile.hpp"

namespace sandlab {

/// Declaration order is the tie-break order of applicable_moves.
enum class MoveRule : std::uint8_t { kVRd, kVRs, kHRd, kHRs, kBTd, kBTs };

inline constexpr std::size_t kMoveRuleCount = 6;

std::string_view to_string(MoveRule rule) noexcept;
std::optional<MoveRule> move_rule_from_name(std::string_view name) noexcept;

/// +1 for the *d rules (granule goes to x+1), -1 for the *s rules.
constexpr Cell direction(MoveRule rule) noexcept {
  return (static_cast<int>(rule) % 2 == 0) ? 1 : -1;
}

/// Reflection about the origin swaps d and s.
constexpr MoveRule mirrored(MoveRule rule) noexcept {
  return static_cast<MoveRule>(static_cast<int>(rule) ^ 1);
}

struct SequentialMove {
  MoveRule rule;
  Cell site;

  Cell destination() const noexcept { return site + direction(rule); }
  bool operator==(const SequentialMove&) const = default;
};

/// "VRd@0".
std::string to_string(const SequentialMove& move);

/// Which horizontal moves of height 1 are frozen.
enum class HrConvention {
  kNoHeightOne,    ///< no HR move from a cell holding a single granule (default)
  kSummaryStrict,  ///< only the isolated patterns 0,1,0 -> 0,0,1 and 0,1,0 -> 1,0,0
  kOff,            ///< every HR move allowed
};

class RuleMask {
 public:
  constexpr RuleMask() = default;
  constexpr explicit RuleMask(std::uint8_t bits) : bits_(bits & 0x3f) {}
  constexpr RuleMask(std::initializer_list<MoveRule> rules) {
    for (MoveRule r : rules) bits_ |= bit(r);
  }

  static constexpr RuleMask all() { return RuleMask(std::uint8_t{0x3f}); }
  static constexpr RuleMask vertical() { return {MoveRule::kVRd, MoveRule::kVRs}; }
  static constexpr RuleMask horizontal() { return {MoveRule::kHRd, MoveRule::kHRs}; }
  static constexpr RuleMask bottom_up() { return {MoveRule::kBTd, MoveRule::kBTs}; }

  constexpr bool contains(MoveRule r) const noexcept { return (bits_ & bit(r)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr RuleMask operator|(RuleMask o) const noexcept {
    return RuleMask(static_cast<std::uint8_t>(bits_ | o.bits_));
  }
  constexpr bool operator==(const RuleMask&) const = default;

 private:
  static constexpr std::uint8_t bit(MoveRule r) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r));
  }
  std::uint8_t bits_ = 0;
};

/// Comma separated tags as written on the command line: "vr_d,hr_s,bt_d".
RuleMask parse_rule_mask(std::string_view text);
std::string to_string(RuleMask mask);

struct RulesetPolicy {
  RuleMask enabled = RuleMask::all();
  HrConvention hr_convention = HrConvention::kNoHeightOne;
  /// BT fires only from plateaus at least this high (1 or 2).
  Count bt_height_floor = 1;
  /// Merge translation-equivalent nodes in digraphs and searches.
  bool quotient_translations = false;

  static RulesetPolicy only(RuleMask mask) {
    RulesetPolicy p;
    p.enabled = mask;
    return p;
  }
};

/// Guard of `move` under the policy conventions (the enabled mask is ignored).
bool guard_holds(const Configuration& c, const SequentialMove& move, const RulesetPolicy& policy);

/// Enabled moves whose guards hold, by ascending site then rule order.
std::vector<SequentialMove> applicable_moves(const Configuration& c, const RulesetPolicy& policy);

/// Moves one granule from move.site to move.destination(). Throws
/// Error(kInapplicableMove) when the guard fails.
Configuration apply_move(const Configuration& c, const SequentialMove& move,
                         const RulesetPolicy& policy = {});

struct DigraphEdge {
  std::size_t from;
  SequentialMove move;
  std::size_t to;
  bool operator==(const DigraphEdge&) const = default;
};

struct TransitionDigraph {
  Configuration root;
  RulesetPolicy policy;
  /// nodes[0] is the root; then breadth-first discovery order.
  std::vector<Configuration> nodes;
  std::vector<DigraphEdge> edges;
  /// Minimal depth of each node.
  std::vector<std::size_t> levels;
  /// Node indices with no applicable move, ascending.
  std::vector<std::size_t> equilibria;
  bool node_cap_reached = false;
  bool depth_cap_reached = false;
  /// Node lookup; keys are shifted to offset 0 in quotient mode.
  std::unordered_map<Configuration, std::size_t, SequenceHash> index;

  /// Index of `c` (of its translation class in quotient mode).
  std::optional<std::size_t> find(const Configuration& c) const;
  std::vector<std::size_t> out_edges(std::size_t node) const;
};

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

/// Breadth-first closure from c0. In quotient mode each node is the first
/// discovered member of its translation class and an edge's target is that
/// representative, so apply_move(from, move) equals `to` only up to T_a.
TransitionDigraph explore_digraph(const Configuration& c0, const RulesetPolicy& policy,
                                  std::size_t node_cap = kDefaultNodeCap,
                                  std::optional<std::size_t> depth_cap = std::nullopt);

using MovePath = std::vector<SequentialMove>;

/// Distinct simple paths root -> target, at most max_paths, in DFS order.
std::vector<MovePath> enumerate_paths(const TransitionDigraph& d, const Configuration& target,
                                      std::size_t max_paths);

/// Replays a move sequence; throws kInapplicableMove on the first bad step.
Configuration replay(const Configuration& source, const MovePath& path,
                     const RulesetPolicy& policy = {});

/// Counts of root -> equilibrium paths in an acyclic digraph. Throws
/// Error(kInvalidArgument) if the digraph has a cycle.
struct MaximalPathSummary {
  std::uint64_t path_count = 0;
  std::set<std::size_t> lengths;
};
MaximalPathSummary maximal_paths(const TransitionDigraph& d);

struct DecompositionResult {
  bool reachable = false;
  /// The search ended without a verdict (depth or node budget).
  bool budget_exceeded = false;
  /// Shortest move sequences source -> target, at most the requested count.
  std::vector<MovePath> paths;
  std::size_t explored_nodes = 0;
};

/// Breadth-first search for sequences of enabled moves turning source into
/// target. When the plain search stops on a budget, the translation-quotient
/// closure is tried: if it is finite and misses the target's class the target
/// is unreachable.
DecompositionResult decompose_parallel_transition(const Configuration& source,
                                                  const Configuration& target,
                                                  const RulesetPolicy& policy,
                                                  std::size_t depth_cap,
                                                  std::size_t max_paths = 16,
                                                  std::size_t node_cap = kDefaultNodeCap);

struct FamilyReachability {
  std::string family;  ///< "VR", "VR+HR", "VR+HR+BT"
  RuleMask mask;
  DecompositionResult result;
};

struct NecessityReport {
  std::vector<FamilyReachability> families;
  /// Index into families of the smallest family that reaches the target.
  std::optional<std::size_t> minimal_family;
  bool any_budget_exceeded() const noexcept;
};

/// Reachability under the nested families VR, VR+HR, VR+HR+BT (both
/// directions each) with default conventions.
NecessityReport necessity_analysis(const Configuration& source, const Configuration& target,
                                   std::size_t depth_cap);

struct SpmOrbitSummary {
  TransitionDigraph digraph;
  Configuration equilibrium;
  std::set<std::size_t> maximal_path_lengths;
  std::uint64_t maximal_path_count = 0;
};

/// Left-to-right vertical rule only, from an ordered partition. Throws
/// Error(kNotOrderedPartition) if c0 is not non-increasing and
/// Error(kInvalidArgument) if the closure does not end in one equilibrium.
SpmOrbitSummary sequential_spm_orbit(const Configuration& c0, std::size_t depth_cap);

/// 2 N^2 for N granules.
std::size_t default_depth_cap(Count total) noexcept;

}  // namespace sandlab
