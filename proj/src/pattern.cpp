#include "fapinette/pattern.hpp"

#include "fapinette/errors.hpp"
#include "fapinette/text.hpp"

namespace fapinette {

namespace {

constexpr std::u32string_view kSlot = U"(.+)";

bool match_from(const std::vector<std::u32string>& lits, std::u32string_view w, size_t slot,
                size_t pos, Captures& out) {
  // Invariant: lits[slot] has been consumed, w[pos..] remains for slot `slot`.
  const size_t n_slots = lits.size() - 1;
  const std::u32string& next = lits[slot + 1];
  if (slot + 1 == n_slots) {
    if (w.size() < pos + 1 + next.size()) return false;
    if (w.substr(w.size() - next.size()) != next) return false;
    out[slot] = std::u32string(w.substr(pos, w.size() - next.size() - pos));
    return true;
  }
  // Longest capture first: scan candidate positions of `next` from the right.
  if (w.size() < pos + 1 + next.size()) return false;
  for (size_t at = w.size() - next.size(); at >= pos + 1; --at) {
    if (w.compare(at, next.size(), next) != 0) continue;
    if (match_from(lits, w, slot + 1, at + next.size(), out)) {
      out[slot] = std::u32string(w.substr(pos, at - pos));
      return true;
    }
  }
  return false;
}

}  // namespace

Pattern Pattern::from_literals(std::vector<std::u32string> literals) {
  if (literals.size() < 2) throw InvariantError("pattern needs at least one slot");
  for (size_t i = 0; i < literals.size(); ++i) {
    if (i > 0 && i + 1 < literals.size() && literals[i].empty())
      throw InvariantError("pattern has adjacent slots");
    if (literals[i].find(kSlot) != std::u32string::npos)
      throw InvariantError("pattern literal contains a slot marker");
  }
  Pattern p;
  p.literals_ = std::move(literals);
  return p;
}

Pattern Pattern::parse(std::string_view rendered) {
  if (rendered.size() < 2 || rendered.front() != '^' || rendered.back() != '$')
    throw ParseError("pattern must be anchored: " + std::string(rendered));
  std::u32string body = text::to_u32(rendered.substr(1, rendered.size() - 2));
  std::vector<std::u32string> lits;
  size_t pos = 0;
  while (true) {
    size_t at = body.find(kSlot, pos);
    if (at == std::u32string::npos) {
      lits.push_back(body.substr(pos));
      break;
    }
    lits.push_back(body.substr(pos, at - pos));
    pos = at + kSlot.size();
  }
  try {
    return from_literals(std::move(lits));
  } catch (const InvariantError& e) {
    throw ParseError("invalid pattern " + std::string(rendered) + ": " + e.what());
  }
}

std::string Pattern::render() const {
  std::u32string s = U"^";
  for (size_t i = 0; i < literals_.size(); ++i) {
    if (i) s += kSlot;
    s += literals_[i];
  }
  s += U"$";
  return text::to_utf8(s);
}

size_t Pattern::literal_length() const {
  size_t n = 0;
  for (const auto& l : literals_) n += l.size();
  return n;
}

std::optional<Captures> apply_pattern(const Pattern& p, std::u32string_view word) {
  const auto& lits = p.literals();
  if (word.substr(0, lits[0].size()) != lits[0]) return std::nullopt;
  Captures out(p.slots());
  if (!match_from(lits, word, 0, lits[0].size(), out)) return std::nullopt;
  return out;
}

std::optional<std::vector<std::string>> apply_pattern(const Pattern& p, std::string_view word) {
  auto caps = apply_pattern(p, text::to_u32(word));
  if (!caps) return std::nullopt;
  std::vector<std::string> out;
  out.reserve(caps->size());
  for (const auto& c : *caps) out.push_back(text::to_utf8(c));
  return out;
}

std::u32string instantiate_pattern(const Pattern& p, const Captures& captures) {
  if (captures.size() != p.slots())
    throw InvariantError("pattern " + p.render() + " expects " + std::to_string(p.slots()) +
                         " captures, got " + std::to_string(captures.size()));
  const auto& lits = p.literals();
  std::u32string out = lits[0];
  for (size_t i = 0; i < captures.size(); ++i) {
    if (captures[i].empty()) throw InvariantError("empty capture for " + p.render());
    out += captures[i];
    out += lits[i + 1];
  }
  return out;
}

std::string instantiate_pattern(const Pattern& p, const std::vector<std::string>& captures) {
  Captures caps;
  caps.reserve(captures.size());
  for (const auto& c : captures) caps.push_back(text::to_u32(c));
  return text::to_utf8(instantiate_pattern(p, caps));
}

std::u32string join_captures(const Captures& c) {
  std::u32string out;
  for (const auto& s : c) out += s;
  return out;
}

}  // namespace fapinette
