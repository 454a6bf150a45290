#include "fapinette/pos.hpp"

#include "fapinette/errors.hpp"

namespace fapinette {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<PosTag> parse_pos_tag(std::string_view s) {
  if (s == "N") return PosTag::N;
  if (s == "V") return PosTag::V;
  if (s == "A") return PosTag::A;
  if (s == "R") return PosTag::R;
  return std::nullopt;
}

PosMap PosMap::defaults() {
  PosMap m;
  m.set("noun", PosTag::N);
  m.set("verb", PosTag::V);
  m.set("adj", PosTag::A);
  m.set("adv", PosTag::R);
  m.set("N", PosTag::N);
  m.set("V", PosTag::V);
  m.set("A", PosTag::A);
  m.set("R", PosTag::R);
  return m;
}

PosMap PosMap::parse(std::string_view text) {
  PosMap m;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find_first_of(",\n", pos);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (item.empty() || item.front() == '#') continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("POS map entry without '=': " + std::string(item));
    auto label = trim(item.substr(0, eq));
    auto tag = parse_pos_tag(trim(item.substr(eq + 1)));
    if (label.empty() || !tag)
      throw ParseError("invalid POS map entry: " + std::string(item));
    m.set(std::string(label), *tag);
  }
  return m;
}

std::optional<PosTag> PosMap::map(std::string_view label) const {
  auto it = table_.find(label);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

}  // namespace fapinette
