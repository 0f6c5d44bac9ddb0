#include "sandlab/literal.hpp"

#include <charconv>
#include <vector>

namespace sandlab {
namespace {

struct Parsed {
  std::vector<Count> values;
  Cell offset = 0;
};

bool is_space(char ch) { return ch == ' ' || ch == '\t'; }

Parsed parse_generic(std::string_view text, bool allow_negative) {
  if (text.find("...") != std::string_view::npos ||
      text.find("\xE2\x80\xA6") != std::string_view::npos ||
      text.find("bar") != std::string_view::npos) {
    throw Error(ErrorCode::kUnrepresentable,
                "infinite-support notation is not representable; only finite literals");
  }

  Parsed out;
  std::ptrdiff_t origin_index = -1;
  std::size_t pos = 0;
  const std::size_t n = text.size();

  auto skip_spaces = [&] {
    while (pos < n && is_space(text[pos])) ++pos;
  };
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorCode::kParseError,
                 msg + " at byte " + std::to_string(pos), static_cast<std::ptrdiff_t>(pos));
  };

  skip_spaces();
  if (pos == n) throw fail("empty literal");

  // A leading '|' puts the first value at cell 0 with nothing to its left.
  if (text[pos] == '|') {
    origin_index = 0;
    ++pos;
    skip_spaces();
  }

  while (true) {
    skip_spaces();
    if (pos == n) throw fail("expected a value");
    const std::size_t start = pos;
    Count value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + n;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) throw fail("value out of range");
    if (ec != std::errc{} || ptr == first) throw fail("expected a decimal integer");
    pos += static_cast<std::size_t>(ptr - first);
    if (value < 0 && !allow_negative) {
      throw Error(ErrorCode::kNegativeValue,
                  "negative granule count at byte " + std::to_string(start),
                  static_cast<std::ptrdiff_t>(start));
    }
    out.values.push_back(value);

    skip_spaces();
    if (pos == n) break;
    const char sep = text[pos];
    if (sep == ',') {
      ++pos;
      continue;
    }
    if (sep == '|') {
      if (origin_index >= 0) {
        throw Error(ErrorCode::kMultipleOrigins,
                    "second origin marker at byte " + std::to_string(pos),
                    static_cast<std::ptrdiff_t>(pos));
      }
      origin_index = static_cast<std::ptrdiff_t>(out.values.size());
      ++pos;
      skip_spaces();
      if (pos == n) throw fail("no value after origin marker");
      continue;
    }
    throw fail(std::string("unexpected character '") + sep + "'");
  }

  out.offset = origin_index < 0 ? 0 : -static_cast<Cell>(origin_index);
  return out;
}

}  // namespace

Configuration parse_config_literal(std::string_view text) {
  Parsed p = parse_generic(text, /*allow_negative=*/false);
  return Configuration::normalize(std::move(p.values), p.offset);
}

HeightProfile parse_height_literal(std::string_view text) {
  Parsed p = parse_generic(text, /*allow_negative=*/true);
  return HeightProfile::normalize(std::move(p.values), p.offset);
}

template <class Tag>
std::string to_literal(const LatticeSequence<Tag>& s, const LatticeWindow& window) {
  LatticeWindow w = window.merged(LatticeWindow{0, 0});
  std::string out;
  for (Cell x = w.lo; x <= w.hi; ++x) {
    if (x != w.lo) out += (x == 0 ? '|' : ',');
    out += std::to_string(s.at(x));
  }
  return out;
}

template <class Tag>
std::string to_literal(const LatticeSequence<Tag>& s) {
  return to_literal(s, s.window());
}

template std::string to_literal(const Configuration&);
template std::string to_literal(const HeightProfile&);
template std::string to_literal(const Configuration&, const LatticeWindow&);
template std::string to_literal(const HeightProfile&, const LatticeWindow&);

}  // namespace sandlab
