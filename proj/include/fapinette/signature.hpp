#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace fapinette {

/// Edit distance over code points with unit-cost insertions and deletions
/// (no substitution): |a| + |b| - 2 * LCS(a, b).
size_t edit_distance(std::u32string_view a, std::u32string_view b);
size_t edit_distance(std::string_view a, std::string_view b);

struct AnalogySignature {
  size_t edit_distance = 0;
  /// count(c, lemma2) - count(c, lemma1); zero entries are never stored.
  std::map<char32_t, int> char_delta;

  auto operator<=>(const AnalogySignature&) const = default;
  bool operator==(const AnalogySignature&) const = default;
};

AnalogySignature signature(std::u32string_view lemma1, std::u32string_view lemma2);
AnalogySignature signature(std::string_view lemma1, std::string_view lemma2);

/// `4 n:-1 e:-1 s:-2` style rendering, deltas in code point order.
std::string to_string(const AnalogySignature& s);

}  // namespace fapinette
