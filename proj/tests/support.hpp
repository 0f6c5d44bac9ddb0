#pragma once

#include <map>
#include <random>
#include <string_view>
#include <vector>

#include "sandlab/literal.hpp"
#include "sandlab/parallel.hpp"
#include "sandlab/pile.hpp"

namespace sandlab::test {

inline Configuration C(std::string_view text) { return parse_config_literal(text); }
inline HeightProfile H(std::string_view text) { return parse_height_literal(text); }

inline Configuration column(Count n) {
  return n == 0 ? Configuration{} : Configuration::normalize(std::vector<Count>{n}, 0);
}

inline Configuration random_config(std::mt19937_64& rng, int max_len, Count max_value) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<Cell> off(-max_len, max_len);
  std::uniform_int_distribution<Count> val(0, max_value);
  std::vector<Count> v(static_cast<std::size_t>(len(rng)));
  for (auto& x : v) x = val(rng);
  return Configuration::normalize(std::move(v), off(rng));
}

// Sparse cell map built straight from the definitions, as a second opinion
// on the stencil code.
using CellMap = std::map<Cell, Count>;

inline CellMap cells(const Configuration& c) {
  CellMap m;
  for (Cell x = c.lo(); !c.is_zero() && x <= c.hi(); ++x) {
    if (c.at(x) != 0) m[x] = c.at(x);
  }
  return m;
}

inline Configuration from_cells(const CellMap& m) {
  if (m.empty()) return {};
  const Cell lo = m.begin()->first;
  const Cell hi = m.rbegin()->first;
  std::vector<Count> v(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [x, n] : m) v[static_cast<std::size_t>(x - lo)] = n;
  return Configuration::normalize(std::move(v), lo);
}

// Every critical jump x -> x+1 sheds one grain simultaneously.
inline Configuration gk_by_grains(const Configuration& c) {
  CellMap m = cells(c);
  CellMap out = m;
  for (Cell x = c.lo() - 1; !c.is_zero() && x <= c.hi(); ++x) {
    if (c.at(x) - c.at(x + 1) >= 2) {
      out[x] -= 1;
      out[x + 1] += 1;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return from_cells(out);
}

// Chip firing: every cell holding at least theta fires, sending D(y) to
// the cell that sees it at offset y.
inline Configuration fp_by_firing(const Configuration& c, const RuleSpec& rule) {
  CellMap out = cells(c);
  for (const auto& [z, n] : cells(c)) {
    if (n < rule.threshold()) continue;
    out[z] -= rule.threshold();
    for (const auto& [y, d] : rule.distribution()) out[z - y] += d;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return from_cells(out);
}

}  // namespace sandlab::test
