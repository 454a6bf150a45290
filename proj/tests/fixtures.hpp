#pragma once

// Hand-built table rows shared by the unit tests and the acceptance runner.

#include <string>
#include <vector>

#include "fapinette/errors.hpp"
#include "fapinette/lexicon.hpp"
#include "fapinette/text.hpp"

namespace fixtures {

using namespace fapinette;

inline LexiconEntry entry(const std::string& l1, PosTag c1, const std::string& l2, PosTag c2,
                          const std::string& e1, const std::string& e2) {
  LexiconEntry e{l1, c1, l2, c2, "", Pattern::parse(e1), Pattern::parse(e2)};
  auto caps = apply_pattern(e.exponent1, text::to_u32(l1));
  if (!caps) throw InvariantError("fixture pattern " + e1 + " does not match " + l1);
  e.stem = text::to_utf8(join_captures(*caps));
  return e;
}

/// A defs row whose lemmatized definition is "<prefix> lemma1".
inline DefEntry def(const std::string& l1, PosTag c1, const std::string& l2, PosTag c2,
                    const std::string& e1, const std::string& e2,
                    const std::string& prefix = "related to") {
  DefEntry d;
  d.entry = entry(l1, c1, l2, c2, e1, e2);
  d.definition2 = prefix + " " + l1 + ".";
  std::string cur;
  for (char ch : prefix + " " + l1) {
    if (ch == ' ') {
      if (!cur.empty()) d.lemmatized_definition2.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) d.lemmatized_definition2.push_back(cur);
  d.lemmatized_definition2.push_back(".");
  return d;
}

/// Planted orientation counts: 3 rows of ^(.+)er$→^(.+)$ (N→V) against 7
/// rows of ^(.+)$→^(.+)er$ (V→N).
inline std::vector<DefEntry> backformation_table() {
  std::vector<DefEntry> rows;
  for (const char* w : {"helicopt", "burgl", "typewrit"})
    rows.push_back(def(std::string(w) + "er", PosTag::N, w, PosTag::V, "^(.+)er$", "^(.+)$", "to use a"));
  for (const char* w : {"speak", "read", "teach", "sing", "walk", "farm", "paint"})
    rows.push_back(def(w, PosTag::V, std::string(w) + "er", PosTag::N, "^(.+)$", "^(.+)er$", "one who"));
  return rows;
}

/// Four cargar/descargar rows plus the edges that tie each family together.
inline std::vector<DefEntry> stolon_table() {
  std::vector<DefEntry> rows;
  for (const char* w : {"cargar", "carga", "cargador", "cargarse"})
    rows.push_back(def(w, PosTag::V, std::string("des") + w, PosTag::V, "^(.+)$", "^des(.+)$", "opposite of"));
  rows[1].entry.cat1 = rows[1].entry.cat2 = PosTag::N;
  rows[2].entry.cat1 = rows[2].entry.cat2 = PosTag::N;
  for (const std::string pre : {"", "des"}) {
    rows.push_back(def(pre + "cargar", PosTag::V, pre + "carga", PosTag::N, "^(.+)r$", "^(.+)$", "action of"));
    rows.push_back(def(pre + "cargar", PosTag::V, pre + "cargador", PosTag::N, "^(.+)r$", "^(.+)dor$", "one who"));
    rows.push_back(def(pre + "cargar", PosTag::V, pre + "cargarse", PosTag::V, "^(.+)$", "^(.+)se$", "reflexive of"));
  }
  return rows;
}

}  // namespace fixtures
