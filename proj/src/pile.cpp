#include "sandlab/pile.hpp"

#include <algorithm>
#include <numeric>

namespace sandlab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMultipleOrigins: return "MultipleOrigins";
    case ErrorCode::kUnrepresentable: return "Unrepresentable";
    case ErrorCode::kInapplicableMove: return "InapplicableMove";
    case ErrorCode::kNegativityWitness: return "NegativityWitness";
    case ErrorCode::kNotOrderedPartition: return "NotOrderedPartition";
    case ErrorCode::kBoundExceeded: return "BoundExceeded";
    case ErrorCode::kInvalidRule: return "InvalidRule";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

NegativityWitness::NegativityWitness(Cell cell, Count value)
    : Error(ErrorCode::kNegativityWitness,
            "negative cell " + std::to_string(cell) + " = " + std::to_string(value)),
      cell_(cell),
      value_(value) {}

LatticeWindow::LatticeWindow(Cell lo_, Cell hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) {
    throw Error(ErrorCode::kInvalidArgument, "lattice window with lo > hi");
  }
}

LatticeWindow LatticeWindow::merged(const LatticeWindow& other) const noexcept {
  LatticeWindow w;
  w.lo = std::min(lo, other.lo);
  w.hi = std::max(hi, other.hi);
  return w;
}

LatticeWindow LatticeWindow::widened(Cell by) const noexcept {
  LatticeWindow w;
  w.lo = lo - by;
  w.hi = hi + by;
  return w;
}

template <class Tag>
LatticeSequence<Tag> LatticeSequence<Tag>::normalize(std::vector<Count> raw, Cell offset) {
  if constexpr (kNonNegative) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] < 0) {
        throw Error(ErrorCode::kNegativeValue,
                    "negative granule count " + std::to_string(raw[i]) + " at cell " +
                        std::to_string(offset + static_cast<Cell>(i)));
      }
    }
  }
  auto first = std::find_if(raw.begin(), raw.end(), [](Count v) { return v != 0; });
  LatticeSequence out;
  if (first == raw.end()) return out;
  auto last = std::find_if(raw.rbegin(), raw.rend(), [](Count v) { return v != 0; }).base();
  out.offset_ = offset + static_cast<Cell>(first - raw.begin());
  if (first == raw.begin() && last == raw.end()) {
    out.values_ = std::move(raw);
  } else {
    out.values_.assign(first, last);
  }
  return out;
}

template <class Tag>
LatticeWindow LatticeSequence<Tag>::window() const noexcept {
  LatticeWindow w;
  if (!values_.empty()) {
    w.lo = lo();
    w.hi = hi();
  }
  return w;
}

template <class Tag>
std::vector<Count> LatticeSequence<Tag>::dense(const LatticeWindow& w) const {
  std::vector<Count> out(w.size(), 0);
  for (Cell x = w.lo; x <= w.hi; ++x) out[static_cast<std::size_t>(x - w.lo)] = at(x);
  return out;
}

template <class Tag>
Count LatticeSequence<Tag>::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), Count{0});
}

template <class Tag>
LatticeSequence<Tag> LatticeSequence<Tag>::shifted(Cell a) const {
  LatticeSequence out = *this;
  if (!out.values_.empty()) out.offset_ -= a;
  return out;
}

template <class Tag>
LatticeSequence<Tag> LatticeSequence<Tag>::reflected() const {
  LatticeSequence out;
  if (values_.empty()) return out;
  out.values_.assign(values_.rbegin(), values_.rend());
  out.offset_ = -hi();
  return out;
}

template class LatticeSequence<GranuleTag>;
template class LatticeSequence<HeightTag>;

Configuration normalize(std::vector<Count> raw, Cell offset) {
  return Configuration::normalize(std::move(raw), offset);
}

Count total_granules(const Configuration& c) noexcept { return c.sum(); }

HeightProfile height_profile(const Configuration& c) {
  if (c.is_zero()) return {};
  // h is supported on [lo-1, hi].
  std::vector<Count> h;
  h.reserve(c.values().size() + 1);
  for (Cell x = c.lo() - 1; x <= c.hi(); ++x) h.push_back(c.at(x) - c.at(x + 1));
  return HeightProfile::normalize(std::move(h), c.lo() - 1);
}

bool translation_equivalent(const Configuration& a, const Configuration& b) noexcept {
  return std::ranges::equal(a.values(), b.values());
}

bool is_gk_stable(const Configuration& c) noexcept {
  if (c.is_zero()) return true;
  for (Cell x = c.lo() - 1; x <= c.hi(); ++x) {
    if (c.at(x) - c.at(x + 1) > 1) return false;
  }
  return true;
}

bool is_fp_stable(const Configuration& c) noexcept {
  return std::ranges::all_of(c.values(), [](Count v) { return v <= 1; });
}

bool is_perfect_support(const Configuration& c) noexcept {
  return !c.is_zero() && std::ranges::none_of(c.values(), [](Count v) { return v == 0; });
}

bool is_origin_symmetric(const Configuration& c) noexcept { return c == c.reflected(); }

bool is_non_increasing(const Configuration& c) noexcept {
  auto v = c.values();
  return std::ranges::is_sorted(v, std::greater<>{});
}

}  // namespace sandlab
