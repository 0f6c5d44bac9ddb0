#pragma once

// Synchronous (parallel) global transition functions on Z and orbit
// iteration.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sandlab/pile.hpp"

namespace sandlab {

enum class RuleKind {
  kGK,            ///< granule sandpile, one grain down every critical jump
  kFP,            ///< threshold firing with neighborhood and payout D
  kHeightDiff,    ///< same firing law read as dynamics of c(x) - c(x+1)
  kSymmetricSM1,  ///< two-sided gated version of kGK
  kGen1g,         ///< signed generalized distribution G
  kGen1gPrime,    ///< positive D weighted by the offset sign and size
  kConstantG1,    ///< G = 1 on the neighborhood
};

/// Short name used on the command line and in trace documents.
std::string_view rule_kind_name(RuleKind kind) noexcept;
std::optional<RuleKind> rule_kind_from_name(std::string_view name) noexcept;

struct NeighborWeight {
  Cell offset;
  Count weight;
  bool operator==(const NeighborWeight&) const = default;
};

/// A validated parallel rule: kind, neighborhood with its distribution, and the
/// stability threshold derived from them.
class RuleSpec {
 public:
  static RuleSpec gk();
  static RuleSpec height_diff();
  static RuleSpec symmetric_sm1();
  /// Default neighborhood {-1,+1} with D = 1 (theta = 2).
  static RuleSpec fp();
  static RuleSpec fp(std::vector<NeighborWeight> distribution);
  static RuleSpec gen1g(std::vector<NeighborWeight> distribution);
  static RuleSpec gen1g_prime(std::vector<NeighborWeight> distribution);
  static RuleSpec constant_g1(std::vector<Cell> neighborhood);

  /// Builds a rule of any kind from raw parts. An empty neighborhood means the
  /// kind's default ({-1,+1}); an empty distribution means the kind's default
  /// weights. Throws Error(kInvalidRule).
  static RuleSpec make(RuleKind kind, std::vector<Cell> neighborhood,
                       std::vector<Count> distribution);

  RuleKind kind() const noexcept { return kind_; }
  const std::vector<NeighborWeight>& distribution() const noexcept { return distribution_; }
  std::vector<Cell> neighborhood() const;
  std::vector<Count> weights() const;
  Count threshold() const noexcept { return threshold_; }
  /// max |y| over the neighborhood.
  Cell radius() const noexcept { return radius_; }

  bool operator==(const RuleSpec&) const = default;

 private:
  RuleSpec(RuleKind kind, std::vector<NeighborWeight> distribution);

  RuleKind kind_ = RuleKind::kGK;
  std::vector<NeighborWeight> distribution_;
  Count threshold_ = 2;
  Cell radius_ = 1;
};

/// c'(x) = c(x) + H(c(x-1)-c(x)-2) - H(c(x)-c(x+1)-2).
Configuration gk_step(const Configuration& c);

/// c'(x) = c(x) - theta H(c(x)-theta) + sum_y D(y) H(c(x+y)-theta).
Configuration fp_step(const Configuration& c, const RuleSpec& rule);
Configuration fp_step(const Configuration& c);

/// h'(x) = h(x) - 2H(h(x)-2) + H(h(x-1)-2) + H(h(x+1)-2). Entries may be
/// negative.
HeightProfile height_step(const HeightProfile& h);

/// Two-sided gated rule; throws NegativityWitness if a cell would go
/// negative.
Configuration symmetric_step(const Configuration& c);

/// Untrimmed signed image of a generalized rule.
struct RawProfile {
  Cell offset = 0;
  std::vector<Count> values;

  Count at(Cell x) const noexcept;
  Count sum() const noexcept;
  /// First negative cell, if any.
  std::optional<Cell> first_negative() const noexcept;
};

/// Image of Gen1g, Gen1gPrime or ConstantG1 over the support widened by the
/// rule radius. Negative entries are returned, not rejected.
RawProfile gen1g_step(const Configuration& c, const RuleSpec& rule);

/// One step of any rule on granule configurations. Gen kinds throw
/// NegativityWitness on a negative image. Throws kInvalidRule for kHeightDiff.
Configuration step(const Configuration& c, const RuleSpec& rule);

enum class TripletCase {
  kSPZ1, kSPZ2, kSPZ3, kSPZ4,
  kSFP1, kSFP2, kSFP3, kSFP4, kSFP5, kSFP6, kSFP7, kSFP8,
};

std::string_view to_string(TripletCase tag) noexcept;

/// Change of the middle cell implied by the case.
Count mid_delta(TripletCase tag) noexcept;

TripletCase classify_gk_triplet(Count left, Count mid, Count right);
TripletCase classify_fp_triplet(Count left, Count mid, Count right);

template <class State>
struct OrbitTrace {
  RuleSpec rule;
  std::vector<State> states;
  std::vector<Count> totals;
  bool reached_equilibrium = false;
  /// Index of the first occurrence of the fixed point.
  std::optional<std::size_t> transient_time;

  bool step_cap_reached() const noexcept { return !reached_equilibrium; }
  const State& last() const { return states.back(); }
};

/// 10 N^2 + 100 where N is the granule total (sum of |h| for profiles).
std::size_t default_max_steps(Count total) noexcept;

/// Iterates until state_{t+1} == state_t or max_steps transitions have run.
/// max_steps == 0 selects default_max_steps.
OrbitTrace<Configuration> orbit(const Configuration& c0, const RuleSpec& rule,
                                std::size_t max_steps = 0);
OrbitTrace<HeightProfile> orbit(const HeightProfile& h0, const RuleSpec& rule,
                                std::size_t max_steps = 0);

}  // namespace sandlab
