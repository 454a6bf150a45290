#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace fapinette {

/// Major grammatical category. Enumerators are ordered by their letter so
/// that enum order and rendered order agree.
enum class PosTag : char { A = 'A', N = 'N', R = 'R', V = 'V' };

inline char to_char(PosTag p) { return static_cast<char>(p); }
inline std::string to_string(PosTag p) { return std::string(1, to_char(p)); }

/// Parses one of the canonical single-letter tags.
std::optional<PosTag> parse_pos_tag(std::string_view s);

/// Maps dump-specific part-of-speech labels onto the four major categories.
/// Labels absent from the table are unmappable and the entry is dropped.
class PosMap {
public:
  /// noun/verb/adj/adv plus the canonical letters N/V/A/R.
  static PosMap defaults();

  /// Parses `label=TAG` entries separated by commas or newlines.
  /// Lines starting with '#' are ignored.
  static PosMap parse(std::string_view text);

  void set(std::string label, PosTag tag) { table_[std::move(label)] = tag; }
  std::optional<PosTag> map(std::string_view label) const;
  const std::map<std::string, PosTag, std::less<>>& table() const { return table_; }

private:
  std::map<std::string, PosTag, std::less<>> table_;
};

}  // namespace fapinette
