#include <doctest.h>

#include <algorithm>
#include <set>

#include "sandlab/sequential.hpp"
#include "support.hpp"

using namespace sandlab;
using sandlab::test::C;

namespace {

RulesetPolicy only(std::initializer_list<MoveRule> rules) { return RulesetPolicy::only(RuleMask(rules)); }

std::vector<std::string> moves_of(const Configuration& c, const RulesetPolicy& p) {
  std::vector<std::string> out;
  for (const auto& m : applicable_moves(c, p)) out.push_back(to_string(m));
  return out;
}

// Counts left-to-right vertical move sequences to a stable state straight
// from the definition, one grain at a time.
std::uint64_t count_vrd_sequences(const test::CellMap& m, std::set<std::size_t>& lengths,
                                  std::size_t depth) {
  std::uint64_t total = 0;
  const Cell lo = m.begin()->first;
  const Cell hi = m.rbegin()->first;
  for (Cell x = lo; x <= hi; ++x) {
    const Count here = m.contains(x) ? m.at(x) : 0;
    const Count right = m.contains(x + 1) ? m.at(x + 1) : 0;
    if (here - right < 2) continue;
    test::CellMap next = m;
    if (--next[x] == 0) next.erase(x);
    ++next[x + 1];
    total += count_vrd_sequences(next, lengths, depth + 1);
  }
  if (total == 0) {
    lengths.insert(depth);
    return 1;
  }
  return total;
}

// Reachability under both vertical rules by plain breadth-first search over
// literals.
bool vr_reachable(const Configuration& from, const Configuration& to) {
  std::set<std::string> seen{to_literal(from)};
  std::vector<test::CellMap> frontier{test::cells(from)};
  while (!frontier.empty()) {
    std::vector<test::CellMap> next;
    for (const auto& m : frontier) {
      if (test::from_cells(m) == to) return true;
      const Cell lo = m.begin()->first;
      const Cell hi = m.rbegin()->first;
      for (Cell x = lo; x <= hi; ++x) {
        for (Cell dir : {1, -1}) {
          const Count v = m.contains(x) ? m.at(x) : 0;
          const Count w = m.contains(x + dir) ? m.at(x + dir) : 0;
          if (v - w < 2) continue;
          test::CellMap n = m;
          if (--n[x] == 0) n.erase(x);
          ++n[x + dir];
          if (seen.insert(to_literal(test::from_cells(n))).second) next.push_back(n);
        }
      }
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace

TEST_CASE("move rule names") {
  CHECK(to_string(MoveRule::kHRs) == "HRs");
  CHECK(move_rule_from_name("bt_d") == MoveRule::kBTd);
  CHECK(move_rule_from_name("VRs") == MoveRule::kVRs);
  CHECK_FALSE(move_rule_from_name("XR"));
  CHECK(mirrored(MoveRule::kBTd) == MoveRule::kBTs);
  CHECK(direction(MoveRule::kVRs) == -1);
  CHECK(to_string(SequentialMove{MoveRule::kVRd, 0}) == "VRd@0");
}

TEST_CASE("rule masks") {
  CHECK(parse_rule_mask("vr_d,vr_s") == RuleMask::vertical());
  CHECK(parse_rule_mask("vr,hr,bt") == RuleMask::all());
  CHECK(parse_rule_mask("all") == RuleMask::all());
  CHECK(to_string(parse_rule_mask("bt_s,vr_d")) == "vr_d,bt_s");
  CHECK_THROWS_AS(parse_rule_mask("vr_x"), Error);
  CHECK_THROWS_AS(parse_rule_mask(""), Error);
}

TEST_CASE("applicable_moves") {
  CHECK(moves_of(C("0,1|2,1,0"), {}) == std::vector<std::string>{"HRd@0", "HRs@0"});
  CHECK(moves_of(C("5,4,2,1"), only({MoveRule::kVRd})) == std::vector<std::string>{"VRd@1"});
  CHECK(moves_of(C("1,0,1"), {}).empty());
}

TEST_CASE("HR conventions") {
  RulesetPolicy hr = only({MoveRule::kHRd, MoveRule::kHRs});
  CHECK(moves_of(C("1,1,0"), hr).empty());
  CHECK(moves_of(C("0,1,0"), hr).empty());

  hr.hr_convention = HrConvention::kSummaryStrict;
  CHECK(moves_of(C("0,1,0"), hr).empty());
  CHECK(moves_of(C("1,1"), hr) == std::vector<std::string>{"HRs@0", "HRd@1"});

  hr.hr_convention = HrConvention::kOff;
  CHECK(moves_of(C("0|1"), hr) == std::vector<std::string>{"HRd@0", "HRs@0"});
}

TEST_CASE("BT floor") {
  RulesetPolicy bt = only({MoveRule::kBTd, MoveRule::kBTs});
  CHECK(moves_of(C("1,1"), bt) == std::vector<std::string>{"BTd@0", "BTs@1"});
  bt.bt_height_floor = 2;
  CHECK(moves_of(C("1,1"), bt).empty());
  CHECK(moves_of(C("2,2"), bt) == std::vector<std::string>{"BTd@0", "BTs@1"});
  bt.bt_height_floor = 0;
  CHECK_THROWS_AS(applicable_moves(C("1"), bt), Error);
}

TEST_CASE("apply_move") {
  CHECK(apply_move(C("0,1|2,1,0"), {MoveRule::kHRs, 0}) == C("0,2|1,1,0"));
  CHECK(apply_move(C("0,2|1,1,0"), {MoveRule::kBTd, 0}) == C("0,2|0,2,0"));
  CHECK(apply_move(C("1,1|2,1,1"), {MoveRule::kHRd, 0}) == C("1,1|1,2,1"));
  CHECK(apply_move(C("5,3,3,1"), {MoveRule::kVRd, 0}) == C("4,4,3,1"));
  try {
    apply_move(C("5,3,3,1"), {MoveRule::kVRd, 1});
    FAIL("expected InapplicableMove");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInapplicableMove);
  }
}

TEST_CASE("digraph from 5,4,2,1 under VRd") {
  const auto d = explore_digraph(C("5,4,2,1"), only({MoveRule::kVRd}));
  std::set<std::string> nodes;
  for (const auto& n : d.nodes) nodes.insert(to_literal(n));
  CHECK(nodes == std::set<std::string>{"5,4,2,1", "5,3,3,1", "4,4,3,1", "5,3,2,2", "4,4,2,2",
                                       "5,3,2,1,1", "4,3,3,2", "4,4,2,1,1", "4,3,3,1,1",
                                       "4,3,2,2,1"});
  REQUIRE(d.equilibria.size() == 1);
  CHECK(d.nodes[d.equilibria[0]] == C("4,3,2,2,1"));
  CHECK(d.edges.size() == 12);
  for (const auto& e : d.edges) CHECK(apply_move(d.nodes[e.from], e.move) == d.nodes[e.to]);

  // Five maximal paths, agreeing with the grain-by-grain count.
  const auto summary = maximal_paths(d);
  std::set<std::size_t> lengths;
  CHECK(summary.path_count == count_vrd_sequences(test::cells(C("5,4,2,1")), lengths, 0));
  CHECK(lengths == std::set<std::size_t>{6});
  CHECK(summary.path_count == 5);
  CHECK(summary.lengths == std::set<std::size_t>{6});

  const auto paths = enumerate_paths(d, C("4,3,2,2,1"), 100);
  CHECK(paths.size() == 5);
  for (const auto& p : paths) {
    CHECK(p.size() == 6);
    CHECK(replay(C("5,4,2,1"), p) == C("4,3,2,2,1"));
  }
}

TEST_CASE("digraph from 2 under VR keeps the HR-frozen equilibria") {
  const auto d = explore_digraph(C("2"), only({MoveRule::kVRd, MoveRule::kVRs, MoveRule::kHRd, MoveRule::kHRs}));
  std::set<std::string> eq;
  for (auto i : d.equilibria) eq.insert(to_literal(d.nodes[i]));
  CHECK(eq == std::set<std::string>{"1|1", "1,1"});
  CHECK_FALSE(d.find(C("1|0,1")));
}

TEST_CASE("digraph corner cases") {
  const auto z = explore_digraph(Configuration{}, {});
  CHECK(z.nodes.size() == 1);
  CHECK(z.edges.empty());
  CHECK(z.equilibria == std::vector<std::size_t>{0});

  const auto capped = explore_digraph(C("6"), only({MoveRule::kVRd, MoveRule::kVRs}), 3);
  CHECK(capped.node_cap_reached);
  CHECK(capped.nodes.size() == 3);

  CHECK(enumerate_paths(z, Configuration{}, 5) == std::vector<MovePath>{MovePath{}});
  CHECK(enumerate_paths(z, C("1"), 5).empty());
}

TEST_CASE("three-granule diamond") {
  const auto d = explore_digraph(C("3"), only({MoveRule::kVRd, MoveRule::kVRs}));
  const auto paths = enumerate_paths(d, C("1|1,1"), 10);
  CHECK(paths.size() == 2);
  for (const auto& p : paths) CHECK(p.size() == 2);
}

TEST_CASE("quotient mode merges translates") {
  RulesetPolicy p = only({MoveRule::kVRd, MoveRule::kVRs});
  p.quotient_translations = true;
  const auto d = explore_digraph(C("2"), p);
  CHECK(d.nodes.size() == 2);
  CHECK(d.equilibria.size() == 1);
  CHECK(d.find(C("0,0,0|1,1")));
}

TEST_CASE("decompose_parallel_transition") {
  SUBCASE("vertical rules cannot do the four-granule step") {
    const auto r = decompose_parallel_transition(C("0,1|2,1,0"), C("0,2|0,2,0"),
                                                 only({MoveRule::kVRd, MoveRule::kVRs}), 32);
    CHECK_FALSE(r.reachable);
    CHECK_FALSE(r.budget_exceeded);
  }
  SUBCASE("horizontal plus bottom-up can") {
    const auto r = decompose_parallel_transition(
        C("0,1|2,1,0"), C("0,2|0,2,0"),
        only({MoveRule::kHRd, MoveRule::kHRs, MoveRule::kBTd, MoveRule::kBTs}), 32);
    REQUIRE(r.reachable);
    std::set<std::string> got;
    for (const auto& p : r.paths) {
      CHECK(replay(C("0,1|2,1,0"), p) == C("0,2|0,2,0"));
      got.insert(to_string(p[0]) + " " + to_string(p[1]));
    }
    CHECK(got == std::set<std::string>{"HRs@0 BTd@0", "HRd@0 BTs@0"});
  }
  SUBCASE("three granules, vertical") {
    const auto r = decompose_parallel_transition(C("3"), C("1|1,1"), only({MoveRule::kVRd, MoveRule::kVRs}), 18);
    CHECK(r.reachable);
    CHECK(r.paths.size() == 2);
    for (const auto& p : r.paths) CHECK(p.size() == 2);
  }
  SUBCASE("six-granule step t=3 -> t=4") {
    const auto r = decompose_parallel_transition(
        C("1,1|2,1,1"), C("1,2|0,2,1"),
        only({MoveRule::kHRd, MoveRule::kHRs, MoveRule::kBTd, MoveRule::kBTs}), 32);
    REQUIRE(r.reachable);
    CHECK(r.paths.size() == 2);
    for (const auto& p : r.paths) CHECK(replay(C("1,1|2,1,1"), p) == C("1,2|0,2,1"));
  }
  SUBCASE("identity and total mismatch") {
    const auto same = decompose_parallel_transition(Configuration{}, Configuration{}, {}, 4);
    CHECK(same.reachable);
    CHECK(same.paths == std::vector<MovePath>{MovePath{}});
    const auto r = decompose_parallel_transition(C("2"), C("3"), {}, 4);
    CHECK_FALSE(r.reachable);
    CHECK_FALSE(r.budget_exceeded);
  }
  SUBCASE("a capped search is settled by the quotient closure") {
    // BT and VR walk a pair of granules along the line forever, so the plain
    // search is cut off; the quotient closure {[1,1], [2]} settles it.
    const auto r = decompose_parallel_transition(C("1,1"), C("1,0,1"), {}, 2, 4, 3);
    CHECK_FALSE(r.reachable);
    CHECK_FALSE(r.budget_exceeded);
    CHECK(r.explored_nodes == 3);
  }
  SUBCASE("agrees with the plain vertical search") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
      const auto a = test::random_config(rng, 3, 4);
      const auto b = test::random_config(rng, 3, 4);
      if (total_granules(a) != total_granules(b)) continue;
      const auto r = decompose_parallel_transition(a, b, only({MoveRule::kVRd, MoveRule::kVRs}),
                                                   default_depth_cap(total_granules(a)));
      CHECK(r.reachable == vr_reachable(a, b));
    }
  }
}

TEST_CASE("necessity_analysis") {
  SUBCASE("four granules need BT") {
    const auto n = necessity_analysis(C("0,1|2,1,0"), C("0,2|0,2,0"), 32);
    REQUIRE(n.families.size() == 3);
    CHECK_FALSE(n.families[0].result.reachable);
    CHECK_FALSE(n.families[1].result.reachable);
    CHECK(n.families[2].result.reachable);
    CHECK(n.minimal_family == 2u);
    CHECK_FALSE(n.any_budget_exceeded());
  }
  SUBCASE("two granules cannot reach 1|0,1 under any family") {
    const auto n = necessity_analysis(C("2"), C("1|0,1"), 8);
    for (const auto& f : n.families) {
      CHECK_FALSE(f.result.reachable);
      CHECK_FALSE(f.result.budget_exceeded);
    }
    CHECK_FALSE(n.minimal_family);
  }
  SUBCASE("three granules: vertical suffices") {
    const auto n = necessity_analysis(C("3"), C("1|1,1"), 18);
    CHECK(n.minimal_family == 0u);
  }
}

TEST_CASE("sequential_spm_orbit") {
  const auto six = sequential_spm_orbit(C("6"), 72);
  CHECK(six.equilibrium == C("3,2,1"));
  CHECK(six.maximal_path_lengths == std::set<std::size_t>{4});

  const auto s = sequential_spm_orbit(C("5,4,2,1"), 288);
  CHECK(s.equilibrium == C("4,3,2,2,1"));
  CHECK(s.maximal_path_lengths == std::set<std::size_t>{6});

  const auto one = sequential_spm_orbit(C("1"), 2);
  CHECK(one.maximal_path_lengths == std::set<std::size_t>{0});

  try {
    sequential_spm_orbit(C("8,1,5"), 10);
    FAIL("expected NotOrderedPartition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotOrderedPartition);
  }
}
