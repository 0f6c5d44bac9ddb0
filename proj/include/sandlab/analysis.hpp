#pragma once

// Closed-form equilibrium and transient predictors, bounded counterexample
// searches, partition-space enumeration, and cross-checks of the predictors
// against the engines.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sandlab/parallel.hpp"
#include "sandlab/pile.hpp"

namespace sandlab {

/// n = k(k+1)/2 + k_prime with 0 <= k_prime <= k.
struct TriangularDecomposition {
  Count n = 0;
  Count k = 0;
  Count k_prime = 0;
  bool operator==(const TriangularDecomposition&) const = default;
};

TriangularDecomposition decompose_triangular(Count n);

/// (k, k-1, ..., k'+1, k', k', ..., 2, 1) from cell 0; the plain staircase
/// when k' = 0.
Configuration gk_equilibrium_shape(Count n);

/// Length of every maximal left-to-right vertical path from a single column
/// of n granules: C(k+1,3) + k k' - C(k',2).
Count gk_transient_time(Count n);

/// Odd k: k ones centred on the origin. Even k = 2h: h ones, an empty origin,
/// h ones.
Configuration fp_equilibrium_shape(Count k);

struct NNViolation {
  RuleSpec rule;
  Configuration witness;
  Cell cell = 0;
  Count value = 0;
};

/// N = {-y, +y} with G(y) = y, for each listed y.
std::vector<RuleSpec> symmetric_pair_family(std::span<const Cell> ys);

/// Exhaustive scan for negative images of generalized rules. Only the cells
/// the local rule reads at the origin are enumerated (values 0..value_bound);
/// the scan certifies nothing beyond that bound. Each rule's radius must fit
/// in window_radius, otherwise Error(kInvalidArgument).
std::vector<NNViolation> nn_search(std::span<const RuleSpec> rules, Cell window_radius,
                                   Count value_bound);

struct ConservationMismatch {
  Configuration config;
  Count before = 0;
  Count after = 0;
};

/// Sampled configurations whose one-step image has a different total. Gen
/// kinds are measured on the raw signed image.
std::vector<ConservationMismatch> conservation_audit(const RuleSpec& rule,
                                                     std::span<const Configuration> sample);

struct PartitionSpaceSizes {
  std::uint64_t ordered = 0;      ///< |S(n)|, non-increasing compositions
  std::uint64_t generalized = 0;  ///< |Omega(n)|, all compositions
  bool operator==(const PartitionSpaceSizes&) const = default;
};

inline constexpr Count kMaxPartitionN = 20;

/// Counts by walking every composition of n. Throws Error(kBoundExceeded)
/// for n > kMaxPartitionN.
PartitionSpaceSizes enumerate_partition_spaces(Count n);

struct CrosscheckRow {
  Count n = 0;
  bool gk_matches = false;
  std::optional<std::size_t> gk_parallel_transient;
  bool fp_matches = false;
  std::optional<std::size_t> fp_transient;
  /// Present only for n <= the sequential limit.
  std::optional<bool> sequential_matches;
  std::set<std::size_t> sequential_lengths;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  std::vector<std::string> mismatches;
  bool clean() const noexcept { return mismatches.empty(); }
};

inline constexpr Count kSequentialCrosscheckLimit = 12;

/// For n = 0..n_max: GK and FP parallel orbits from a single column against
/// the predicted shapes; for n <= sequential_limit also every maximal
/// vertical path length against gk_transient_time.
CrosscheckReport prediction_crosscheck(Count n_max,
                                       Count sequential_limit = kSequentialCrosscheckLimit);

}  // namespace sandlab
