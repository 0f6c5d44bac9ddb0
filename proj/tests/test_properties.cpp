// Randomized invariants. Seeds are fixed so failures reproduce.

#include <doctest.h>

#include <set>

#include "sandlab/analysis.hpp"
#include "sandlab/sequential.hpp"
#include "support.hpp"

using namespace sandlab;

namespace {

constexpr int kCases = 2000;

std::multiset<std::string> mirror_moves(const Configuration& c, const RulesetPolicy& p) {
  std::multiset<std::string> out;
  for (const auto& m : applicable_moves(c, p)) out.insert(to_string(SequentialMove{mirrored(m.rule), -m.site}));
  return out;
}

std::multiset<std::string> moves(const Configuration& c, const RulesetPolicy& p) {
  std::multiset<std::string> out;
  for (const auto& m : applicable_moves(c, p)) out.insert(to_string(m));
  return out;
}

Configuration random_partition(std::mt19937_64& rng, Count n) {
  std::vector<Count> parts;
  Count left = n;
  Count cap = n;
  while (left > 0) {
    std::uniform_int_distribution<Count> d(1, std::min(left, cap));
    parts.push_back(d(rng));
    cap = parts.back();
    left -= parts.back();
  }
  return Configuration::normalize(std::move(parts), 0);
}

}  // namespace

TEST_CASE("normalization is idempotent and the height transform telescopes") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 20, 30);
    std::vector<Count> v(c.values().begin(), c.values().end());
    CHECK(normalize(v, c.offset()) == c);
    CHECK(height_profile(c).sum() == 0);
  }
}

TEST_CASE("translation group laws and equivariance") {
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<Cell> a_dist(-10, 10);
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 15, 20);
    const Cell a = a_dist(rng);
    const Cell b = a_dist(rng);
    CHECK(shift(c, 0) == c);
    CHECK(shift(shift(c, a), b) == shift(c, a + b));
    CHECK(shift(shift(c, a), -a) == c);
    CHECK(height_profile(shift(c, a)) == shift(height_profile(c), a));
    CHECK(gk_step(shift(c, a)) == shift(gk_step(c), a));
    CHECK(translation_equivalent(c, shift(c, a)));
  }
}

TEST_CASE("translation equivalence is an equivalence relation") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < kCases; ++i) {
    // Small values so that equivalent pairs actually occur.
    const auto a = test::random_config(rng, 3, 1);
    const auto b = test::random_config(rng, 3, 1);
    const auto c = test::random_config(rng, 3, 1);
    CHECK(translation_equivalent(a, a));
    CHECK(translation_equivalent(a, b) == translation_equivalent(b, a));
    if (translation_equivalent(a, b) && translation_equivalent(b, c)) CHECK(translation_equivalent(a, c));
  }
}

TEST_CASE("every Boolean configuration is GK-stable and FP-fixed") {
  std::mt19937_64 rng(104);
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 20, 1);
    CHECK(is_gk_stable(c));
    CHECK(fp_step(c) == c);
  }
}

TEST_CASE("GK conserves granules") {
  std::mt19937_64 rng(105);
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 40, 50);
    CHECK(total_granules(gk_step(c)) == total_granules(c));
  }
}

TEST_CASE("height dynamics commute with the height transform") {
  std::mt19937_64 rng(106);
  for (int i = 0; i < 1000; ++i) {
    const auto c = test::random_config(rng, 30, 40);
    CHECK(height_profile(gk_step(c)) == height_step(height_profile(c)));
  }
}

TEST_CASE("fixed points: exhaustive over support 5, values 0..4") {
  std::size_t cases = 0;
  std::vector<Count> v(5);
  for (int code = 0; code < 3125; ++code) {
    int rest = code;
    for (auto& x : v) {
      x = rest % 5;
      rest /= 5;
    }
    const auto c = Configuration::normalize(v, 0);
    CHECK((gk_step(c) == c) == is_gk_stable(c));
    CHECK((fp_step(c) == c) == is_fp_stable(c));
    ++cases;
  }
  CHECK(cases == 3125);
}

TEST_CASE("FP images stay non-negative for random rules") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<Cell> off(-3, 3);
  std::uniform_int_distribution<Count> w(1, 3);
  for (int i = 0; i < kCases; ++i) {
    std::vector<NeighborWeight> d;
    while (d.size() < 2) {
      const Cell y = off(rng);
      if (y != 0 && (d.empty() || d[0].offset != y)) d.push_back({y, w(rng)});
    }
    const auto rule = RuleSpec::fp(d);
    const auto c = test::random_config(rng, 15, 3 * rule.threshold());
    // fp_step would throw on a negative cell.
    CHECK_NOTHROW(fp_step(c, rule));
    CHECK(fp_step(c, rule) == test::fp_by_firing(c, rule));
  }
}

TEST_CASE("FP orbits from a column stay symmetric") {
  for (Count k = 0; k <= 40; ++k) {
    const auto t = orbit(test::column(k), RuleSpec::fp());
    for (const auto& s : t.states) CHECK(is_origin_symmetric(s));
    CHECK(t.last() == fp_equilibrium_shape(k));
  }
}

TEST_CASE("FP step commutes with reflection") {
  std::mt19937_64 rng(108);
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 15, 8);
    CHECK(fp_step(c.reflected()) == fp_step(c).reflected());
  }
}

TEST_CASE("sequential moves conserve granules") {
  std::mt19937_64 rng(109);
  RulesetPolicy open;
  open.hr_convention = HrConvention::kOff;
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 12, 6);
    for (const auto& m : applicable_moves(c, open)) {
      CHECK(total_granules(apply_move(c, m, open)) == total_granules(c));
    }
  }
}

TEST_CASE("HR convention freezes single granules") {
  std::mt19937_64 rng(110);
  const auto hr = RulesetPolicy::only(RuleMask::horizontal());
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 12, 3);
    for (const auto& m : applicable_moves(c, hr)) CHECK(c.at(m.site) >= 2);
  }
}

TEST_CASE("reflection swaps d and s moves") {
  std::mt19937_64 rng(111);
  RulesetPolicy p;
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 10, 5);
    CHECK(moves(c.reflected(), p) == mirror_moves(c, p));
  }
}

TEST_CASE("confluence on ordered partitions") {
  std::mt19937_64 rng(112);
  std::uniform_int_distribution<Count> n_dist(1, 12);
  for (int i = 0; i < 60; ++i) {
    const auto c0 = random_partition(rng, n_dist(rng));
    const auto s = sequential_spm_orbit(c0, default_depth_cap(total_granules(c0)));
    CHECK(s.equilibrium == orbit(c0, RuleSpec::gk()).last());
  }
}

TEST_CASE("digraph exploration is deterministic and replays") {
  std::mt19937_64 rng(113);
  for (int i = 0; i < 50; ++i) {
    const auto c = test::random_config(rng, 4, 3);
    const auto p = RulesetPolicy::only(RuleMask::vertical());
    const auto a = explore_digraph(c, p, 2000);
    const auto b = explore_digraph(c, p, 2000);
    CHECK(a.nodes == b.nodes);
    CHECK(a.edges == b.edges);
    for (const auto& e : a.edges) CHECK(apply_move(a.nodes[e.from], e.move, p) == a.nodes[e.to]);
    for (auto eq : a.equilibria) CHECK(applicable_moves(a.nodes[eq], p).empty());
    if (!a.equilibria.empty()) {
      const auto target = a.nodes[a.equilibria.back()];
      for (const auto& path : enumerate_paths(a, target, 5)) CHECK(replay(c, path, p) == target);
    }
  }
}

TEST_CASE("SM1 stays non-negative on random inputs") {
  std::mt19937_64 rng(114);
  for (int i = 0; i < kCases; ++i) {
    const auto c = test::random_config(rng, 15, 10);
    CHECK_NOTHROW(symmetric_step(c));
  }
}

TEST_CASE("closed forms over wide ranges") {
  for (Count n = 0; n <= 500; ++n) {
    const auto g = gk_equilibrium_shape(n);
    CHECK(is_gk_stable(g));
    CHECK(total_granules(g) == n);
    const auto f = fp_equilibrium_shape(n);
    CHECK(is_fp_stable(f));
    CHECK(is_origin_symmetric(f));
    CHECK(total_granules(f) == n);
  }
  for (Count n = 0; n <= 1'000'000; n += 997) {
    const auto d = decompose_triangular(n);
    CHECK(d.k * (d.k + 1) / 2 + d.k_prime == n);
    CHECK(d.k_prime <= d.k);
  }
  for (Count n = 0; n <= 14; ++n) {
    const auto s = enumerate_partition_spaces(n);
    CHECK(s.ordered <= s.generalized);
  }
}
