#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fapinette {

using Captures = std::vector<std::u32string>;

/// Anchored wildcard expression: lit0 (.+) lit1 (.+) ... litN. The first and
/// last literals may be empty, inner ones may not.
class Pattern {
public:
  Pattern() : literals_{U"", U""} {}

  /// Throws InvariantError on zero slots or an empty inner literal.
  static Pattern from_literals(std::vector<std::u32string> literals);
  /// `^(.+)$`
  static Pattern bare() { return Pattern(); }
  /// Accepts exactly the canonical rendering; throws ParseError otherwise.
  static Pattern parse(std::string_view rendered);

  std::string render() const;
  size_t slots() const { return literals_.size() - 1; }
  /// Total literal length in code points.
  size_t literal_length() const;
  bool is_bare() const { return slots() == 1 && literals_[0].empty() && literals_[1].empty(); }
  const std::vector<std::u32string>& literals() const { return literals_; }

  auto operator<=>(const Pattern&) const = default;
  bool operator==(const Pattern&) const = default;

private:
  std::vector<std::u32string> literals_;
};

struct PatternPair {
  Pattern left;
  Pattern right;

  size_t slots() const { return left.slots(); }
  size_t literal_length() const { return left.literal_length() + right.literal_length(); }

  auto operator<=>(const PatternPair&) const = default;
  bool operator==(const PatternPair&) const = default;
};

/// Matches with every slot capturing at least one code point. Among several
/// matches, earlier slots take the longest possible capture.
std::optional<Captures> apply_pattern(const Pattern& p, std::u32string_view word);
std::optional<std::vector<std::string>> apply_pattern(const Pattern& p, std::string_view word);

/// Splices captures into the slots. Throws InvariantError on arity mismatch
/// or an empty capture.
std::u32string instantiate_pattern(const Pattern& p, const Captures& captures);
std::string instantiate_pattern(const Pattern& p, const std::vector<std::string>& captures);

/// Captures concatenated in slot order.
std::u32string join_captures(const Captures& c);

}  // namespace fapinette
