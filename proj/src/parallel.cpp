#include "sandlab/parallel.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

namespace sandlab {
namespace {

constexpr std::array<std::pair<RuleKind, std::string_view>, 7> kKindNames{{
    {RuleKind::kGK, "gk"},
    {RuleKind::kFP, "fp"},
    {RuleKind::kHeightDiff, "height"},
    {RuleKind::kSymmetricSM1, "sm1"},
    {RuleKind::kGen1g, "gen1g"},
    {RuleKind::kGen1gPrime, "gen1g-prime"},
    {RuleKind::kConstantG1, "const-g1"},
}};

[[noreturn]] void invalid_rule(const std::string& msg) {
  throw Error(ErrorCode::kInvalidRule, msg);
}

std::vector<NeighborWeight> unit_pair() { return {{-1, 1}, {1, 1}}; }

LatticeWindow eval_window(const LatticeWindow& support, Cell radius) {
  return support.widened(radius);
}

}  // namespace

std::string_view rule_kind_name(RuleKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<RuleKind> rule_kind_from_name(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

RuleSpec::RuleSpec(RuleKind kind, std::vector<NeighborWeight> distribution)
    : kind_(kind), distribution_(std::move(distribution)) {
  if (distribution_.empty()) invalid_rule("empty neighborhood");
  std::ranges::sort(distribution_, {}, &NeighborWeight::offset);
  for (std::size_t i = 0; i < distribution_.size(); ++i) {
    if (distribution_[i].offset == 0) invalid_rule("neighborhood contains 0");
    if (i > 0 && distribution_[i].offset == distribution_[i - 1].offset) {
      invalid_rule("duplicate neighbor offset " + std::to_string(distribution_[i].offset));
    }
  }
  radius_ = 0;
  for (const auto& nw : distribution_) radius_ = std::max(radius_, std::abs(nw.offset));

  switch (kind_) {
    case RuleKind::kGK:
    case RuleKind::kHeightDiff:
    case RuleKind::kSymmetricSM1:
      if (distribution_ != unit_pair()) {
        invalid_rule(std::string(rule_kind_name(kind_)) +
                     " is defined only on {-1,+1} with unit weights");
      }
      threshold_ = 2;
      break;
    case RuleKind::kFP:
      threshold_ = 0;
      for (const auto& nw : distribution_) {
        if (nw.weight < 1) invalid_rule("fp distribution must be >= 1");
        threshold_ += nw.weight;
      }
      break;
    case RuleKind::kGen1g:
      threshold_ = 0;
      for (const auto& nw : distribution_) threshold_ += std::abs(nw.weight);
      break;
    case RuleKind::kGen1gPrime:
      threshold_ = 0;
      for (const auto& nw : distribution_) {
        if (nw.weight < 1) invalid_rule("gen1g-prime distribution must be >= 1");
        threshold_ += nw.weight * std::abs(nw.offset);
      }
      break;
    case RuleKind::kConstantG1:
      for (const auto& nw : distribution_) {
        if (nw.weight != 1) invalid_rule("const-g1 distribution is identically 1");
      }
      threshold_ = static_cast<Count>(distribution_.size());
      break;
  }
}

RuleSpec RuleSpec::gk() { return RuleSpec(RuleKind::kGK, unit_pair()); }
RuleSpec RuleSpec::height_diff() { return RuleSpec(RuleKind::kHeightDiff, unit_pair()); }
RuleSpec RuleSpec::symmetric_sm1() { return RuleSpec(RuleKind::kSymmetricSM1, unit_pair()); }
RuleSpec RuleSpec::fp() { return RuleSpec(RuleKind::kFP, unit_pair()); }

RuleSpec RuleSpec::fp(std::vector<NeighborWeight> distribution) {
  return RuleSpec(RuleKind::kFP, std::move(distribution));
}

RuleSpec RuleSpec::gen1g(std::vector<NeighborWeight> distribution) {
  return RuleSpec(RuleKind::kGen1g, std::move(distribution));
}

RuleSpec RuleSpec::gen1g_prime(std::vector<NeighborWeight> distribution) {
  return RuleSpec(RuleKind::kGen1gPrime, std::move(distribution));
}

RuleSpec RuleSpec::constant_g1(std::vector<Cell> neighborhood) {
  std::vector<NeighborWeight> d;
  for (Cell y : neighborhood) d.push_back({y, 1});
  return RuleSpec(RuleKind::kConstantG1, std::move(d));
}

RuleSpec RuleSpec::make(RuleKind kind, std::vector<Cell> neighborhood,
                        std::vector<Count> distribution) {
  if (neighborhood.empty()) neighborhood = {-1, 1};
  if (distribution.empty()) {
    for (Cell y : neighborhood) distribution.push_back(kind == RuleKind::kGen1g ? y : 1);
  }
  if (distribution.size() != neighborhood.size()) {
    invalid_rule("distribution has " + std::to_string(distribution.size()) +
                 " entries for a neighborhood of " + std::to_string(neighborhood.size()));
  }
  std::vector<NeighborWeight> d;
  for (std::size_t i = 0; i < neighborhood.size(); ++i) d.push_back({neighborhood[i], distribution[i]});
  return RuleSpec(kind, std::move(d));
}

std::vector<Cell> RuleSpec::neighborhood() const {
  std::vector<Cell> out;
  for (const auto& nw : distribution_) out.push_back(nw.offset);
  return out;
}

std::vector<Count> RuleSpec::weights() const {
  std::vector<Count> out;
  for (const auto& nw : distribution_) out.push_back(nw.weight);
  return out;
}

Configuration gk_step(const Configuration& c) {
  if (c.is_zero()) return c;
  const LatticeWindow w = eval_window(c.window(), 1);
  std::vector<Count> out(w.size());
  for (Cell x = w.lo; x <= w.hi; ++x) {
    const Count v = c.at(x);
    out[static_cast<std::size_t>(x - w.lo)] =
        v + heaviside(c.at(x - 1) - v - 2) - heaviside(v - c.at(x + 1) - 2);
  }
  return Configuration::normalize(std::move(out), w.lo);
}

Configuration fp_step(const Configuration& c, const RuleSpec& rule) {
  if (rule.kind() != RuleKind::kFP) invalid_rule("fp_step needs an fp rule");
  if (c.is_zero()) return c;
  const Count theta = rule.threshold();
  const LatticeWindow w = eval_window(c.window(), rule.radius());
  std::vector<Count> out(w.size());
  for (Cell x = w.lo; x <= w.hi; ++x) {
    const Count v = c.at(x);
    Count next = v - theta * heaviside(v - theta);
    for (const auto& [y, d] : rule.distribution()) next += d * heaviside(c.at(x + y) - theta);
    out[static_cast<std::size_t>(x - w.lo)] = next;
  }
  return Configuration::normalize(std::move(out), w.lo);
}

Configuration fp_step(const Configuration& c) { return fp_step(c, RuleSpec::fp()); }

HeightProfile height_step(const HeightProfile& h) {
  if (h.is_zero()) return h;
  const LatticeWindow w = eval_window(h.window(), 1);
  std::vector<Count> out(w.size());
  for (Cell x = w.lo; x <= w.hi; ++x) {
    const Count v = h.at(x);
    out[static_cast<std::size_t>(x - w.lo)] =
        v - 2 * heaviside(v - 2) + heaviside(h.at(x - 1) - 2) + heaviside(h.at(x + 1) - 2);
  }
  return HeightProfile::normalize(std::move(out), w.lo);
}

Configuration symmetric_step(const Configuration& c) {
  if (c.is_zero()) return c;
  const LatticeWindow w = eval_window(c.window(), 1);
  std::vector<Count> out(w.size());
  for (Cell x = w.lo; x <= w.hi; ++x) {
    const Count l = c.at(x - 1);
    const Count v = c.at(x);
    const Count r = c.at(x + 1);
    const Count next = v + heaviside(v - r) * (heaviside(l - v - 2) - heaviside(v - r - 2)) +
                       heaviside(v - l) * (-heaviside(v - l - 2) + heaviside(r - v - 2));
    if (next < 0) throw NegativityWitness(x, next);
    out[static_cast<std::size_t>(x - w.lo)] = next;
  }
  return Configuration::normalize(std::move(out), w.lo);
}

Count RawProfile::at(Cell x) const noexcept {
  if (x < offset || x >= offset + static_cast<Cell>(values.size())) return 0;
  return values[static_cast<std::size_t>(x - offset)];
}

Count RawProfile::sum() const noexcept {
  return std::accumulate(values.begin(), values.end(), Count{0});
}

std::optional<Cell> RawProfile::first_negative() const noexcept {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) return offset + static_cast<Cell>(i);
  }
  return std::nullopt;
}

RawProfile gen1g_step(const Configuration& c, const RuleSpec& rule) {
  const RuleKind kind = rule.kind();
  if (kind != RuleKind::kGen1g && kind != RuleKind::kGen1gPrime && kind != RuleKind::kConstantG1) {
    invalid_rule("gen1g_step needs gen1g, gen1g-prime or const-g1");
  }
  RawProfile out;
  if (c.is_zero()) return out;
  const Count theta = rule.threshold();
  const LatticeWindow w = eval_window(c.window(), rule.radius());
  out.offset = w.lo;
  out.values.resize(w.size());
  for (Cell x = w.lo; x <= w.hi; ++x) {
    const Count v = c.at(x);
    Count next = v;
    for (const auto& [y, d] : rule.distribution()) {
      switch (kind) {
        case RuleKind::kGen1g:
          next += d * heaviside(d * (c.at(x - y) - v) - theta);
          break;
        case RuleKind::kGen1gPrime: {
          const Count g = d * y;
          next += g * heaviside(g * (c.at(x - y) - v) - theta);
          break;
        }
        default:  // kConstantG1
          next += heaviside(c.at(x + y) - theta);
          break;
      }
    }
    out.values[static_cast<std::size_t>(x - w.lo)] = next;
  }
  return out;
}

Configuration step(const Configuration& c, const RuleSpec& rule) {
  switch (rule.kind()) {
    case RuleKind::kGK: return gk_step(c);
    case RuleKind::kFP: return fp_step(c, rule);
    case RuleKind::kSymmetricSM1: return symmetric_step(c);
    case RuleKind::kGen1g:
    case RuleKind::kGen1gPrime:
    case RuleKind::kConstantG1: {
      RawProfile raw = gen1g_step(c, rule);
      if (auto x = raw.first_negative()) throw NegativityWitness(*x, raw.at(*x));
      return Configuration::normalize(std::move(raw.values), raw.offset);
    }
    case RuleKind::kHeightDiff:
      break;
  }
  invalid_rule("height rule acts on height profiles, not configurations");
}

std::string_view to_string(TripletCase tag) noexcept {
  static constexpr std::array<std::string_view, 12> kNames{
      "SPZ1", "SPZ2", "SPZ3", "SPZ4", "SFP1", "SFP2",
      "SFP3", "SFP4", "SFP5", "SFP6", "SFP7", "SFP8"};
  return kNames[static_cast<std::size_t>(tag)];
}

Count mid_delta(TripletCase tag) noexcept {
  switch (tag) {
    case TripletCase::kSPZ1: return 0;
    case TripletCase::kSPZ2: return 0;
    case TripletCase::kSPZ3: return -1;
    case TripletCase::kSPZ4: return 1;
    case TripletCase::kSFP1: return 0;
    case TripletCase::kSFP2: return 1;
    case TripletCase::kSFP3: return 1;
    case TripletCase::kSFP4: return 2;
    case TripletCase::kSFP5: return -2;
    case TripletCase::kSFP6: return -1;
    case TripletCase::kSFP7: return -1;
    case TripletCase::kSFP8: return 0;
  }
  return 0;
}

TripletCase classify_gk_triplet(Count left, Count mid, Count right) {
  if (left < 0 || mid < 0 || right < 0) {
    throw Error(ErrorCode::kNegativeValue, "triplet entries must be non-negative");
  }
  const bool gain = heaviside(left - mid - 2) != 0;
  const bool loss = heaviside(mid - right - 2) != 0;
  if (gain && loss) return TripletCase::kSPZ1;
  if (!gain && !loss) return TripletCase::kSPZ2;
  return loss ? TripletCase::kSPZ3 : TripletCase::kSPZ4;
}

TripletCase classify_fp_triplet(Count left, Count mid, Count right) {
  if (left < 0 || mid < 0 || right < 0) {
    throw Error(ErrorCode::kNegativeValue, "triplet entries must be non-negative");
  }
  // Cases are numbered by (H(mid-2), H(left-2), H(right-2)) read as bits.
  const int index = static_cast<int>(heaviside(mid - 2) * 4 + heaviside(left - 2) * 2 +
                                     heaviside(right - 2));
  static constexpr std::array<TripletCase, 8> kByBits{
      TripletCase::kSFP1, TripletCase::kSFP2, TripletCase::kSFP3, TripletCase::kSFP4,
      TripletCase::kSFP5, TripletCase::kSFP6, TripletCase::kSFP7, TripletCase::kSFP8};
  return kByBits[static_cast<std::size_t>(index)];
}

std::size_t default_max_steps(Count total) noexcept {
  const auto n = static_cast<std::size_t>(total < 0 ? -total : total);
  return 10 * n * n + 100;
}

namespace {

template <class State, class StepFn, class TotalFn>
OrbitTrace<State> iterate(const State& s0, const RuleSpec& rule, std::size_t max_steps,
                          StepFn&& step_fn, TotalFn&& total_fn) {
  OrbitTrace<State> trace{rule, {}, {}, false, std::nullopt};
  trace.states.push_back(s0);
  trace.totals.push_back(total_fn(s0));
  for (std::size_t t = 0; t < max_steps; ++t) {
    State next = step_fn(trace.states.back());
    if (next == trace.states.back()) {
      trace.reached_equilibrium = true;
      trace.transient_time = trace.states.size() - 1;
      return trace;
    }
    trace.totals.push_back(total_fn(next));
    trace.states.push_back(std::move(next));
  }
  // The last state may already be fixed; one more evaluation decides it.
  if (step_fn(trace.states.back()) == trace.states.back()) {
    trace.reached_equilibrium = true;
    trace.transient_time = trace.states.size() - 1;
  }
  return trace;
}

}  // namespace

OrbitTrace<Configuration> orbit(const Configuration& c0, const RuleSpec& rule,
                                std::size_t max_steps) {
  if (rule.kind() == RuleKind::kHeightDiff) {
    invalid_rule("height rule orbits start from a height profile");
  }
  if (max_steps == 0) max_steps = default_max_steps(total_granules(c0));
  return iterate(
      c0, rule, max_steps, [&](const Configuration& c) { return step(c, rule); },
      [](const Configuration& c) { return total_granules(c); });
}

OrbitTrace<HeightProfile> orbit(const HeightProfile& h0, const RuleSpec& rule,
                                std::size_t max_steps) {
  if (rule.kind() != RuleKind::kHeightDiff) {
    invalid_rule("height profiles evolve only under the height rule");
  }
  if (max_steps == 0) {
    Count abs_sum = 0;
    for (Count v : h0.values()) abs_sum += v < 0 ? -v : v;
    max_steps = default_max_steps(abs_sum);
  }
  return iterate(
      h0, rule, max_steps, [](const HeightProfile& h) { return height_step(h); },
      [](const HeightProfile& h) { return h.sum(); });
}

}  // namespace sandlab
