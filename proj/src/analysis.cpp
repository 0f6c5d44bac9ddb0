#include "sandlab/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sandlab/literal.hpp"
#include "sandlab/sequential.hpp"

namespace sandlab {
namespace {

Count choose(Count n, Count r) {
  if (r < 0 || n < r) return 0;
  Count out = 1;
  for (Count i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

Configuration single_column(Count n) {
  return n == 0 ? Configuration{} : Configuration::normalize(std::vector<Count>{n}, 0);
}

// Cells the local rule reads when evaluated at the origin, origin first.
std::vector<Cell> stencil(const RuleSpec& rule) {
  std::vector<Cell> cells{0};
  for (const auto& nw : rule.distribution()) {
    cells.push_back(rule.kind() == RuleKind::kConstantG1 ? nw.offset : -nw.offset);
  }
  return cells;
}

void scan_rule(const RuleSpec& rule, Cell radius, Count bound, std::vector<NNViolation>& out) {
  const std::vector<Cell> cells = stencil(rule);
  const std::size_t m = cells.size();
  const double patterns = std::pow(static_cast<double>(bound + 1), static_cast<double>(m));
  if (patterns > 5e7) {
    throw Error(ErrorCode::kBoundExceeded,
                "nn_search: " + std::to_string(m) + " stencil cells with bound " +
                    std::to_string(bound) + " is too many patterns");
  }

  std::vector<Count> digits(m, 0);
  std::vector<Count> dense(static_cast<std::size_t>(2 * radius + 1), 0);
  while (true) {
    std::ranges::fill(dense, 0);
    for (std::size_t i = 0; i < m; ++i) dense[static_cast<std::size_t>(cells[i] + radius)] = digits[i];
    Configuration c = Configuration::normalize(dense, -radius);
    const Count v = gen1g_step(c, rule).at(0);
    if (v < 0) out.push_back(NNViolation{rule, std::move(c), 0, v});

    std::size_t i = 0;
    while (i < m && digits[i] == bound) digits[i++] = 0;
    if (i == m) break;
    ++digits[i];
  }
}

void count_compositions(Count remaining, Count last, bool ordered_so_far, PartitionSpaceSizes& acc) {
  if (remaining == 0) {
    ++acc.generalized;
    if (ordered_so_far) ++acc.ordered;
    return;
  }
  for (Count part = 1; part <= remaining; ++part) {
    count_compositions(remaining - part, part, ordered_so_far && part <= last, acc);
  }
}

}  // namespace

TriangularDecomposition decompose_triangular(Count n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative granule count");
  Count k = static_cast<Count>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  // Floating point may be off by one near perfect squares.
  while (k * (k + 1) / 2 > n) --k;
  while ((k + 1) * (k + 2) / 2 <= n) ++k;
  return {n, k, n - k * (k + 1) / 2};
}

Configuration gk_equilibrium_shape(Count n) {
  const auto [total, k, kp] = decompose_triangular(n);
  std::vector<Count> values;
  for (Count v = k; v >= 1; --v) {
    values.push_back(v);
    if (v == kp) values.push_back(v);
  }
  return Configuration::normalize(std::move(values), 0);
}

Count gk_transient_time(Count n) {
  const auto d = decompose_triangular(n);
  return choose(d.k + 1, 3) + d.k * d.k_prime - choose(d.k_prime, 2);
}

Configuration fp_equilibrium_shape(Count k) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "negative granule count");
  if (k == 0) return {};
  const Count h = k / 2;
  std::vector<Count> values(static_cast<std::size_t>(2 * h + 1), 1);
  if (k % 2 == 0) values[static_cast<std::size_t>(h)] = 0;
  return Configuration::normalize(std::move(values), -h);
}

std::vector<RuleSpec> symmetric_pair_family(std::span<const Cell> ys) {
  std::vector<RuleSpec> out;
  for (Cell y : ys) out.push_back(RuleSpec::gen1g({{-y, -y}, {y, y}}));
  return out;
}

std::vector<NNViolation> nn_search(std::span<const RuleSpec> rules, Cell window_radius,
                                   Count value_bound) {
  if (window_radius < 1 || value_bound < 1) {
    throw Error(ErrorCode::kInvalidArgument, "nn_search needs a positive radius and bound");
  }
  std::vector<NNViolation> out;
  for (const RuleSpec& rule : rules) {
    const RuleKind k = rule.kind();
    if (k != RuleKind::kGen1g && k != RuleKind::kGen1gPrime && k != RuleKind::kConstantG1) {
      throw Error(ErrorCode::kInvalidArgument, "nn_search scans generalized rules only");
    }
    if (rule.radius() > window_radius) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rule radius " + std::to_string(rule.radius()) + " exceeds window radius " +
                      std::to_string(window_radius));
    }
    scan_rule(rule, window_radius, value_bound, out);
  }
  return out;
}

std::vector<ConservationMismatch> conservation_audit(const RuleSpec& rule,
                                                     std::span<const Configuration> sample) {
  std::vector<ConservationMismatch> out;
  const RuleKind k = rule.kind();
  const bool raw = k == RuleKind::kGen1g || k == RuleKind::kGen1gPrime || k == RuleKind::kConstantG1;
  for (const Configuration& c : sample) {
    const Count before = total_granules(c);
    const Count after = raw ? gen1g_step(c, rule).sum() : total_granules(step(c, rule));
    if (before != after) out.push_back({c, before, after});
  }
  return out;
}

PartitionSpaceSizes enumerate_partition_spaces(Count n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative granule count");
  if (n > kMaxPartitionN) {
    throw Error(ErrorCode::kBoundExceeded,
                "partition enumeration is capped at n = " + std::to_string(kMaxPartitionN));
  }
  PartitionSpaceSizes acc;
  count_compositions(n, n, true, acc);
  return acc;
}

CrosscheckReport prediction_crosscheck(Count n_max, Count sequential_limit) {
  CrosscheckReport report;
  auto note = [&](Count n, const std::string& what) {
    report.mismatches.push_back("n=" + std::to_string(n) + ": " + what);
  };

  for (Count n = 0; n <= n_max; ++n) {
    CrosscheckRow row;
    row.n = n;
    const Configuration c0 = single_column(n);

    const auto gk = orbit(c0, RuleSpec::gk());
    row.gk_parallel_transient = gk.transient_time;
    row.gk_matches = gk.reached_equilibrium && gk.last() == gk_equilibrium_shape(n);
    if (!row.gk_matches) {
      note(n, "gk orbit ends at " + to_literal(gk.last()) + ", predicted " +
                  to_literal(gk_equilibrium_shape(n)));
    }

    const auto fp = orbit(c0, RuleSpec::fp());
    row.fp_transient = fp.transient_time;
    row.fp_matches = fp.reached_equilibrium && fp.last() == fp_equilibrium_shape(n);
    if (!row.fp_matches) {
      note(n, "fp orbit ends at " + to_literal(fp.last()) + ", predicted " +
                  to_literal(fp_equilibrium_shape(n)));
    }

    if (n <= sequential_limit) {
      const SpmOrbitSummary s = sequential_spm_orbit(c0, default_depth_cap(n));
      row.sequential_lengths = s.maximal_path_lengths;
      const auto expect = static_cast<std::size_t>(gk_transient_time(n));
      row.sequential_matches = s.maximal_path_lengths == std::set<std::size_t>{expect};
      if (!*row.sequential_matches) {
        std::string got;
        for (std::size_t len : s.maximal_path_lengths) got += (got.empty() ? "" : ",") + std::to_string(len);
        note(n, "maximal vertical path lengths {" + got + "}, predicted " + std::to_string(expect));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace sandlab
