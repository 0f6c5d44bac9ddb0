#pragma once

// Named verification suites run by `sandlab verify`. Each check is one line
// of the report; a suite fails if any check fails.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sandlab/pile.hpp"

namespace sandlab {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;

  bool passed() const noexcept;
  /// "PASS name: detail" per check, then a summary line.
  std::string render() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240517;

/// Suite names accepted by run_suite.
const std::vector<std::string_view>& suite_names();

/// n_max bounds the suite's sweep where it has one (shapes: 30, partitions:
/// 12 by default). Throws Error(kInvalidArgument) for an unknown suite.
SuiteReport run_suite(std::string_view suite, std::optional<std::int64_t> n_max,
                      std::uint64_t seed);

/// Random configuration with support length in [0, max_support] placed at an
/// offset in [-max_support, max_support], values in [0, max_value].
Configuration random_configuration(std::mt19937_64& rng, int max_support, Count max_value);

}  // namespace sandlab
