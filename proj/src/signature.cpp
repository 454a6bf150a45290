#include "fapinette/signature.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "fapinette/text.hpp"

namespace fapinette {

size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag : std::min(row[j], row[j - 1]) + 1;
      diag = up;
    }
  }
  return row[b.size()];
}

size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(text::to_u32(a), text::to_u32(b));
}

AnalogySignature signature(std::u32string_view lemma1, std::u32string_view lemma2) {
  AnalogySignature s;
  s.edit_distance = edit_distance(lemma1, lemma2);
  for (char32_t c : lemma1) --s.char_delta[c];
  for (char32_t c : lemma2) ++s.char_delta[c];
  std::erase_if(s.char_delta, [](const auto& kv) { return kv.second == 0; });
  return s;
}

AnalogySignature signature(std::string_view lemma1, std::string_view lemma2) {
  return signature(text::to_u32(lemma1), text::to_u32(lemma2));
}

std::string to_string(const AnalogySignature& s) {
  std::string out = std::to_string(s.edit_distance);
  for (const auto& [c, d] : s.char_delta) {
    out += ' ';
    out += text::to_utf8(std::u32string(1, c));
    out += ':';
    if (d > 0) out += '+';
    out += std::to_string(d);
  }
  return out;
}

}  // namespace fapinette
