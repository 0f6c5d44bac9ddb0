#pragma once

// Text literals for lattice sequences, e.g. "0,1|2,1,0": comma separated
// integers, the value right after '|' sits at cell 0 and values before it at
// ..., -2, -1. Without '|' the first value sits at cell 0.

#include <optional>
#include <string>
#include <string_view>

#include "sandlab/pile.hpp"

namespace sandlab {

/// Throws Error with kParseError (byte offset set), kNegativeValue,
/// kMultipleOrigins or kUnrepresentable.
Configuration parse_config_literal(std::string_view text);

/// Same grammar with signed entries, for height profiles.
HeightProfile parse_height_literal(std::string_view text);

/// Shortest literal that parses back to `s`: covers the support and cell 0,
/// with '|' only when cells left of the origin are shown. Zero is "0".
template <class Tag>
std::string to_literal(const LatticeSequence<Tag>& s);

/// Literal over a fixed window (widened to include cell 0), zeros shown.
/// Used for table rows that line up.
template <class Tag>
std::string to_literal(const LatticeSequence<Tag>& s, const LatticeWindow& window);

}  // namespace sandlab
