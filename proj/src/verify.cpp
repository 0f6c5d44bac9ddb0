#include "sandlab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "sandlab/analysis.hpp"
#include "sandlab/literal.hpp"
#include "sandlab/parallel.hpp"
#include "sandlab/sequential.hpp"

namespace sandlab {
namespace {

void add(SuiteReport& r, std::string name, bool ok, std::string detail = {}) {
  r.checks.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<Configuration> random_sample(std::mt19937_64& rng, std::size_t n, int support,
                                         Count value) {
  std::vector<Configuration> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_configuration(rng, support, value));
  return out;
}

void conservation_suite(SuiteReport& r, std::mt19937_64& rng) {
  const auto sample = random_sample(rng, 10000, 40, 50);

  const auto gk = conservation_audit(RuleSpec::gk(), sample);
  add(r, "gk conserves totals", gk.empty(),
      std::to_string(sample.size()) + " configurations, " + std::to_string(gk.size()) + " mismatches");

  // Every applicable move of every rule, HR convention off so HR fires too.
  RulesetPolicy open;
  open.hr_convention = HrConvention::kOff;
  std::size_t moves = 0;
  std::size_t bad = 0;
  for (const Configuration& c : sample) {
    for (const SequentialMove& m : applicable_moves(c, open)) {
      ++moves;
      if (total_granules(apply_move(c, m, open)) != total_granules(c)) ++bad;
    }
  }
  add(r, "sequential moves conserve totals", bad == 0 && moves > 0,
      std::to_string(moves) + " moves, " + std::to_string(bad) + " mismatches");

  const Configuration lemma = parse_config_literal("0,4|0,4,0");
  const auto cg = conservation_audit(RuleSpec::constant_g1({-1, 1}), std::span(&lemma, 1));
  const bool witnessed = cg.size() == 1 && cg[0].before == 8 && cg[0].after == 12;
  add(r, "const-g1 breaks conservation on 0,4|0,4,0", witnessed,
      witnessed ? "totals 8 -> 12" : "expected 8 -> 12");
}

bool has_witness(const std::vector<NNViolation>& found, Cell y, Count centre, Count value) {
  return std::ranges::any_of(found, [&](const NNViolation& v) {
    return v.rule.radius() == y && v.witness.at(0) == centre && v.witness.at(y) == 0 &&
           v.witness.at(-y) == 0 && v.value == value;
  });
}

void nn_suite(SuiteReport& r, std::mt19937_64& rng) {
  const std::array<Cell, 2> safe{1, 2};
  const auto clean = nn_search(symmetric_pair_family(safe), 4, 8);
  add(r, "N={-y,+y}, y=1,2: no negative image", clean.empty(),
      std::to_string(clean.size()) + " witnesses, radius 4, bound 8");

  const std::array<Cell, 1> three{3};
  const auto w3 = nn_search(symmetric_pair_family(three), 4, 8);
  add(r, "N={-3,+3}: witness c(x)=2 -> -1", has_witness(w3, 3, 2, -1),
      std::to_string(w3.size()) + " witnesses");

  const std::array<Cell, 1> four{4};
  const auto w4 = nn_search(symmetric_pair_family(four), 4, 8);
  add(r, "N={-4,+4}: witnesses c(x)=2 -> -2, c(x)=3 -> -1",
      has_witness(w4, 4, 2, -2) && has_witness(w4, 4, 3, -1),
      std::to_string(w4.size()) + " witnesses");

  const RuleSpec cg = RuleSpec::constant_g1({-1, 1});
  const auto wc = nn_search(std::span(&cg, 1), 1, 6);
  add(r, "const-g1 on {-1,+1}: no negative image", wc.empty(),
      std::to_string(wc.size()) + " witnesses, bound 6");

  // Random FP rules: neighborhood within radius 3, weights 1..3.
  std::uniform_int_distribution<int> count_dist(1, 4);
  std::uniform_int_distribution<Cell> offset_dist(-3, 3);
  std::uniform_int_distribution<Count> weight_dist(1, 3);
  std::size_t negatives = 0;
  const std::size_t trials = 10000;
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<NeighborWeight> d;
    const int want = count_dist(rng);
    while (static_cast<int>(d.size()) < want) {
      const Cell y = offset_dist(rng);
      if (y == 0 || std::ranges::any_of(d, [&](const auto& nw) { return nw.offset == y; })) continue;
      d.push_back({y, weight_dist(rng)});
    }
    const RuleSpec rule = RuleSpec::fp(std::move(d));
    const Configuration c = random_configuration(rng, 20, 3 * rule.threshold());
    // fp_step normalizes, which rejects negatives; compute the image cellwise.
    const Count theta = rule.threshold();
    const LatticeWindow w = c.window().widened(rule.radius());
    for (Cell x = w.lo; x <= w.hi; ++x) {
      Count v = c.at(x) - theta * heaviside(c.at(x) - theta);
      for (const auto& [y, dy] : rule.distribution()) v += dy * heaviside(c.at(x + y) - theta);
      if (v < 0) {
        ++negatives;
        break;
      }
    }
  }
  add(r, "fp images are non-negative", negatives == 0,
      std::to_string(trials) + " random (rule, configuration) pairs");
}

void shapes_suite(SuiteReport& r, Count n_max) {
  const CrosscheckReport report = prediction_crosscheck(n_max, std::min(n_max, kSequentialCrosscheckLimit));
  std::size_t gk_ok = 0, fp_ok = 0, seq_ok = 0, seq_total = 0;
  std::string fp_times;
  for (const CrosscheckRow& row : report.rows) {
    gk_ok += row.gk_matches;
    fp_ok += row.fp_matches;
    if (row.sequential_matches) {
      ++seq_total;
      seq_ok += *row.sequential_matches;
    }
    if (!fp_times.empty()) fp_times += ' ';
    fp_times += std::to_string(row.n) + ":" +
                (row.fp_transient ? std::to_string(*row.fp_transient) : std::string("cap"));
  }
  const std::size_t rows = report.rows.size();
  add(r, "gk orbit from n ends at the staircase shape", gk_ok == rows,
      std::to_string(gk_ok) + "/" + std::to_string(rows));
  add(r, "fp orbit from k ends at the Boolean shape", fp_ok == rows,
      std::to_string(fp_ok) + "/" + std::to_string(rows));
  add(r, "maximal vertical path lengths equal T(n)", seq_ok == seq_total,
      std::to_string(seq_ok) + "/" + std::to_string(seq_total));
  for (const std::string& m : report.mismatches) add(r, "mismatch", false, m);

  std::size_t asymmetric = 0;
  for (Count k = 0; k <= n_max; ++k) {
    const Configuration c0 = k == 0 ? Configuration{} : Configuration::normalize(std::vector<Count>{k}, 0);
    for (const Configuration& s : orbit(c0, RuleSpec::fp()).states) asymmetric += !is_origin_symmetric(s);
  }
  add(r, "fp orbit states are symmetric about the origin", asymmetric == 0,
      std::to_string(asymmetric) + " asymmetric states");
  add(r, "fp transient times (measured, no formula)", true, fp_times);
}

void commutation_suite(SuiteReport& r, std::mt19937_64& rng) {
  const auto sample = random_sample(rng, 1000, 30, 40);
  std::size_t bad = 0;
  for (const Configuration& c : sample) {
    if (height_profile(gk_step(c)) != height_step(height_profile(c))) ++bad;
  }
  add(r, "height_profile . gk_step = height_step . height_profile", bad == 0,
      std::to_string(sample.size()) + " configurations, " + std::to_string(bad) + " mismatches");

  std::uniform_int_distribution<Cell> shift_dist(-10, 10);
  std::size_t shift_bad = 0;
  for (const Configuration& c : sample) {
    const Cell a = shift_dist(rng);
    if (gk_step(shift(c, a)) != shift(gk_step(c), a)) ++shift_bad;
    if (fp_step(shift(c, a)) != shift(fp_step(c), a)) ++shift_bad;
    if (height_profile(shift(c, a)) != shift(height_profile(c), a)) ++shift_bad;
  }
  add(r, "steps and height transform commute with translations", shift_bad == 0,
      std::to_string(shift_bad) + " mismatches");

  std::size_t mirror_bad = 0;
  for (const Configuration& c : sample) {
    if (fp_step(c.reflected()) != fp_step(c).reflected()) ++mirror_bad;
  }
  add(r, "fp step commutes with reflection", mirror_bad == 0,
      std::to_string(mirror_bad) + " mismatches");
}

// Independent count: each composition of n is a subset of the n-1 cut points.
PartitionSpaceSizes brute_force_compositions(Count n) {
  if (n == 0) return {1, 1};
  PartitionSpaceSizes out;
  const std::uint64_t cuts = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < cuts; ++mask) {
    ++out.generalized;
    Count prev = n + 1;
    Count run = 1;
    bool ordered = true;
    for (Count i = 0; i < n - 1; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        ordered = ordered && run <= prev;
        prev = run;
        run = 1;
      } else {
        ++run;
      }
    }
    ordered = ordered && run <= prev;
    out.ordered += ordered;
  }
  return out;
}

void partitions_suite(SuiteReport& r, Count n_max) {
  n_max = std::min(n_max, kMaxPartitionN);
  std::size_t agree = 0;
  bool chain = true;
  std::string sizes;
  for (Count n = 0; n <= n_max; ++n) {
    const PartitionSpaceSizes s = enumerate_partition_spaces(n);
    agree += s == brute_force_compositions(n);
    const double bound = std::pow(static_cast<double>(n + 1), static_cast<double>(n));
    chain = chain && s.ordered <= s.generalized && static_cast<double>(s.generalized) <= bound;
    if (!sizes.empty()) sizes += ' ';
    sizes += std::to_string(n) + ":" + std::to_string(s.ordered) + "/" + std::to_string(s.generalized);
  }
  const auto rows = static_cast<std::size_t>(n_max + 1);
  add(r, "enumeration agrees with cut-point count", agree == rows,
      std::to_string(agree) + "/" + std::to_string(rows) + " (|S|/|Omega|: " + sizes + ")");
  add(r, "|S(n)| <= |Omega(n)| <= (n+1)^n", chain);
  add(r, "identity |[0,N]^[0,N-1]| = N! not asserted", true,
      "the set of all maps has (N+1)^N elements; N! counts only injective ones");
}

}  // namespace

bool SuiteReport::passed() const noexcept {
  return std::ranges::all_of(checks, &SuiteCheck::passed);
}

std::string SuiteReport::render() const {
  std::ostringstream os;
  for (const SuiteCheck& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  const auto failed = std::ranges::count_if(checks, [](const SuiteCheck& c) { return !c.passed; });
  os << "suite " << suite << " seed " << seed << ": " << (checks.size() - failed) << " passed, "
     << failed << " failed\n";
  return os.str();
}

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"conservation", "nn", "shapes", "commutation",
                                                   "partitions"};
  return names;
}

Configuration random_configuration(std::mt19937_64& rng, int max_support, Count max_value) {
  std::uniform_int_distribution<int> len_dist(0, max_support);
  std::uniform_int_distribution<Cell> off_dist(-max_support, max_support);
  std::uniform_int_distribution<Count> val_dist(0, max_value);
  std::vector<Count> v(static_cast<std::size_t>(len_dist(rng)));
  for (Count& x : v) x = val_dist(rng);
  return Configuration::normalize(std::move(v), off_dist(rng));
}

SuiteReport run_suite(std::string_view suite, std::optional<std::int64_t> n_max,
                      std::uint64_t seed) {
  SuiteReport r;
  r.suite = std::string(suite);
  r.seed = seed;
  std::mt19937_64 rng(seed);
  if (n_max && *n_max < 0) throw Error(ErrorCode::kInvalidArgument, "n-max must be >= 0");
  if (suite == "conservation") {
    conservation_suite(r, rng);
  } else if (suite == "nn") {
    nn_suite(r, rng);
  } else if (suite == "shapes") {
    shapes_suite(r, n_max.value_or(30));
  } else if (suite == "commutation") {
    commutation_suite(r, rng);
  } else if (suite == "partitions") {
    partitions_suite(r, n_max.value_or(12));
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + std::string(suite) + "'");
  }
  return r;
}

}  // namespace sandlab
