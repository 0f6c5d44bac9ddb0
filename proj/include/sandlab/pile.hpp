#pragma once

// Finite-support sequences on the integer lattice: granule configurations,
// height profiles, translations and the stability predicates shared by the
// parallel and sequential engines.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace sandlab {

using Cell = std::int64_t;
using Count = std::int64_t;

enum class ErrorCode {
  kNegativeValue,
  kParseError,
  kMultipleOrigins,
  kUnrepresentable,
  kInapplicableMove,
  kNegativityWitness,
  kNotOrderedPartition,
  kBoundExceeded,
  kInvalidRule,
  kInvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::ptrdiff_t byte_offset = -1)
      : std::runtime_error(what), code_(code), byte_offset_(byte_offset) {}

  ErrorCode code() const noexcept { return code_; }
  /// Position in the offending input for parse errors, -1 otherwise.
  std::ptrdiff_t byte_offset() const noexcept { return byte_offset_; }

 private:
  ErrorCode code_;
  std::ptrdiff_t byte_offset_;
};

/// A step produced a negative cell. Carries the cell and value so callers can
/// keep the witness.
class NegativityWitness : public Error {
 public:
  NegativityWitness(Cell cell, Count value);
  Cell cell() const noexcept { return cell_; }
  Count value() const noexcept { return value_; }

 private:
  Cell cell_;
  Count value_;
};

/// Heaviside step with H(0) = 1.
constexpr Count heaviside(Count r) noexcept { return r >= 0 ? 1 : 0; }

/// Inclusive range of cells.
struct LatticeWindow {
  Cell lo = 0;
  Cell hi = 0;

  LatticeWindow() = default;
  LatticeWindow(Cell lo_, Cell hi_);

  std::size_t size() const noexcept { return static_cast<std::size_t>(hi - lo + 1); }
  bool contains(Cell x) const noexcept { return lo <= x && x <= hi; }
  LatticeWindow merged(const LatticeWindow& other) const noexcept;
  LatticeWindow widened(Cell by) const noexcept;
  bool operator==(const LatticeWindow&) const = default;
};

struct GranuleTag {};
struct HeightTag {};

/// Integer sequence on Z with finite support, stored trimmed: either empty or
/// with nonzero first and last entries. Cells outside the stored window are 0.
/// GranuleTag sequences reject negative entries.
template <class Tag>
class LatticeSequence {
 public:
  static constexpr bool kNonNegative = std::is_same_v<Tag, GranuleTag>;

  /// The zero sequence.
  LatticeSequence() = default;

  /// Builds the canonical form of `raw` placed with raw[0] at cell `offset`.
  static LatticeSequence normalize(std::vector<Count> raw, Cell offset);
  static LatticeSequence normalize(std::span<const Count> raw, Cell offset) {
    return normalize(std::vector<Count>(raw.begin(), raw.end()), offset);
  }

  Cell offset() const noexcept { return offset_; }
  std::span<const Count> values() const noexcept { return values_; }
  bool is_zero() const noexcept { return values_.empty(); }

  /// First and last stored cells. Only meaningful when !is_zero().
  Cell lo() const noexcept { return offset_; }
  Cell hi() const noexcept { return offset_ + static_cast<Cell>(values_.size()) - 1; }
  /// Support window; {0,0} for the zero sequence.
  LatticeWindow window() const noexcept;

  Count at(Cell x) const noexcept {
    if (x < offset_ || x > hi()) return 0;
    return values_[static_cast<std::size_t>(x - offset_)];
  }

  /// Values over `w`, zeros included.
  std::vector<Count> dense(const LatticeWindow& w) const;

  Count sum() const noexcept;

  /// T_a: result(x) = this(x + a).
  LatticeSequence shifted(Cell a) const;

  /// Mirror about the origin: result(x) = this(-x).
  LatticeSequence reflected() const;

  bool operator==(const LatticeSequence&) const = default;

 private:
  Cell offset_ = 0;
  std::vector<Count> values_;
};

using Configuration = LatticeSequence<GranuleTag>;
using HeightProfile = LatticeSequence<HeightTag>;

extern template class LatticeSequence<GranuleTag>;
extern template class LatticeSequence<HeightTag>;

/// Convenience over Configuration::normalize.
Configuration normalize(std::vector<Count> raw, Cell offset);

Count total_granules(const Configuration& c) noexcept;

/// h(x) = c(x) - c(x+1).
HeightProfile height_profile(const Configuration& c);

template <class Tag>
LatticeSequence<Tag> shift(const LatticeSequence<Tag>& s, Cell a) {
  return s.shifted(a);
}

/// Equal up to some translation T_a. Offsets are ignored.
bool translation_equivalent(const Configuration& a, const Configuration& b) noexcept;

/// No critical jump: c(x) - c(x+1) <= 1 everywhere.
bool is_gk_stable(const Configuration& c) noexcept;

/// Boolean configuration.
bool is_fp_stable(const Configuration& c) noexcept;

/// Nonzero with no empty cell between the first and last occupied cells.
bool is_perfect_support(const Configuration& c) noexcept;

/// c(-x) = c(x) for all x.
bool is_origin_symmetric(const Configuration& c) noexcept;

/// Non-increasing over its support (an ordered partition read from its first
/// occupied cell).
bool is_non_increasing(const Configuration& c) noexcept;

struct SequenceHash {
  template <class Tag>
  std::size_t operator()(const LatticeSequence<Tag>& s) const noexcept {
    std::size_t h = std::hash<Cell>{}(s.offset());
    for (Count v : s.values()) {
      h ^= std::hash<Count>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace sandlab
