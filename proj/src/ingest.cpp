#include "fapinette/ingest.hpp"

#include <fstream>
#include <json.hpp>

#include "fapinette/text.hpp"

namespace fapinette {

using nlohmann::json;

namespace {

bool has_tab_or_newline(std::string_view s) {
  return s.find_first_of("\t\r\n") != std::string_view::npos;
}

/// Reads `[{"word": ...}, ...]`, keeping usable, normalized words.
std::vector<std::string> word_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) return out;
  for (const auto& item : *it) {
    if (!item.is_object()) continue;
    auto w = item.find("word");
    if (w == item.end() || !w->is_string()) continue;
    std::string word = text::nfc(w->get<std::string>());
    if (word.empty() || has_tab_or_newline(word)) continue;
    out.push_back(std::move(word));
  }
  return out;
}

std::vector<std::string> normalize_tokens(std::vector<std::string> tokens) {
  for (auto& t : tokens) t = text::nfc(t);
  return tokens;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

}  // namespace

std::optional<std::string> validate_record(const DictionaryRecord& r) {
  if (r.lemma.empty()) return "empty lemma";
  if (has_tab_or_newline(r.lemma)) return "lemma contains tab or newline";
  for (const auto& g : r.glosses) {
    if (g.raw.empty()) return "empty gloss";
    if (g.lemmatized) {
      if (g.lemmatized->empty()) return "empty lemmatized gloss";
      for (const auto& t : *g.lemmatized)
        if (t.empty()) return "empty lemmatized token";
    }
  }
  for (const auto* list : {&r.derived, &r.related})
    for (const auto& m : *list)
      if (m.empty() || has_tab_or_newline(m)) return "invalid section member";
  return std::nullopt;
}

void SkipReport::write_tsv(std::ostream& out) const {
  for (const auto& e : entries_) out << e.line << '\t' << text::flatten_whitespace(e.reason) << '\n';
}

std::optional<DictionaryRecord> KaikkiReader::parse_line(const std::string& line,
                                                        std::string& reason) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    reason = "malformed JSON";
    return std::nullopt;
  }
  auto word = obj.find("word");
  if (word == obj.end() || !word->is_string() || word->get<std::string>().empty()) {
    reason = "missing lemma";
    return std::nullopt;
  }
  auto pos_field = obj.find("pos");
  std::optional<PosTag> pos;
  if (pos_field != obj.end() && pos_field->is_string()) pos = pos_map_.map(pos_field->get<std::string>());
  if (!pos) {
    reason = "unmappable POS";
    return std::nullopt;
  }

  DictionaryRecord r;
  r.lemma = text::nfc(word->get<std::string>());
  r.pos = *pos;
  if (auto senses = obj.find("senses"); senses != obj.end() && senses->is_array()) {
    for (const auto& sense : *senses) {
      if (!sense.is_object()) continue;
      auto glosses = sense.find("glosses");
      if (glosses == sense.end() || !glosses->is_array()) continue;
      for (const auto& g : *glosses) {
        if (!g.is_string()) continue;
        std::string raw = g.get<std::string>();
        if (raw.empty()) continue;
        r.glosses.push_back({std::move(raw), std::nullopt});
      }
    }
  }
  r.derived = word_list(obj, "derived");
  r.related = word_list(obj, "related");
  if (auto why = validate_record(r)) {
    reason = *why;
    return std::nullopt;
  }
  return r;
}

std::optional<MorphyNetRow> MorphyNetReader::parse_line(const std::string& line,
                                                       std::string& reason) {
  auto fields = split_tabs(line);
  if (fields.size() < 4) {
    reason = "fewer than 4 fields";
    return std::nullopt;
  }
  auto sp = pos_map_.map(fields[2]);
  auto tp = pos_map_.map(fields[3]);
  if (!sp || !tp) {
    reason = "unmappable POS";
    return std::nullopt;
  }
  MorphyNetRow row{text::nfc(fields[0]), text::nfc(fields[1]), *sp, *tp};
  if (row.source_lemma.empty() || row.target_lemma.empty()) {
    reason = "empty lemma";
    return std::nullopt;
  }
  return row;
}

std::optional<DictionaryRecord> NormalizedReader::parse_line(const std::string& line,
                                                            std::string& reason) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    reason = "malformed JSON";
    return std::nullopt;
  }
  auto fail = [&](std::string why) -> std::optional<DictionaryRecord> {
    reason = std::move(why);
    return std::nullopt;
  };
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const auto& k = it.key();
    if (k != "lemma" && k != "pos" && k != "glosses" && k != "derived" && k != "related")
      return fail("unknown field '" + k + "'");
  }
  try {
    DictionaryRecord r;
    const auto& lemma = obj.at("lemma");
    if (!lemma.is_string()) return fail("lemma is not a string");
    r.lemma = text::nfc(lemma.get<std::string>());
    const auto& pos = obj.at("pos");
    auto tag = pos.is_string() ? parse_pos_tag(pos.get<std::string>()) : std::nullopt;
    if (!tag) return fail("invalid POS");
    r.pos = *tag;
    const auto& glosses = obj.at("glosses");
    if (!glosses.is_array()) return fail("glosses is not an array");
    for (const auto& g : glosses) {
      if (!g.is_object()) return fail("gloss is not an object");
      for (auto it = g.begin(); it != g.end(); ++it)
        if (it.key() != "raw" && it.key() != "lemmatized")
          return fail("unknown gloss field '" + it.key() + "'");
      Gloss gl;
      gl.raw = g.at("raw").get<std::string>();
      if (auto lem = g.find("lemmatized"); lem != g.end())
        gl.lemmatized = normalize_tokens(lem->get<std::vector<std::string>>());
      r.glosses.push_back(std::move(gl));
    }
    if (auto d = obj.find("derived"); d != obj.end())
      r.derived = normalize_tokens(d->get<std::vector<std::string>>());
    if (auto d = obj.find("related"); d != obj.end())
      r.related = normalize_tokens(d->get<std::vector<std::string>>());
    if (auto why = validate_record(r)) return fail(*why);
    return r;
  } catch (const json::exception& e) {
    return fail(std::string("schema violation: ") + e.what());
  }
}

std::vector<DictionaryRecord> parse_kaikki(std::istream& in, SkipReport& skips,
                                           const PosMap& pos_map) {
  return KaikkiReader(in, skips, pos_map).read_all();
}

std::vector<MorphyNetRow> parse_morphynet(std::istream& in, SkipReport& skips,
                                          const PosMap& pos_map) {
  return MorphyNetReader(in, skips, pos_map).read_all();
}

std::vector<DictionaryRecord> parse_normalized(std::istream& in, SkipReport& skips) {
  return NormalizedReader(in, skips).read_all();
}

std::string emit_normalized(const DictionaryRecord& r) {
  nlohmann::ordered_json obj;
  obj["lemma"] = r.lemma;
  obj["pos"] = to_string(r.pos);
  auto glosses = nlohmann::ordered_json::array();
  for (const auto& g : r.glosses) {
    nlohmann::ordered_json jg;
    jg["raw"] = g.raw;
    if (g.lemmatized) jg["lemmatized"] = *g.lemmatized;
    glosses.push_back(std::move(jg));
  }
  obj["glosses"] = std::move(glosses);
  obj["derived"] = r.derived;
  obj["related"] = r.related;
  return obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::vector<std::string> default_lemmatize(std::string_view raw) {
  std::u32string s = text::to_u32(text::lowercase(text::nfc(raw)));
  std::vector<std::string> out;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(text::to_utf8(cur));
    cur.clear();
  };
  for (size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i];
    if (text::is_space(c)) {
      flush();
    } else if (text::is_punctuation(c)) {
      bool joiner = (c == U'-' || c == U'\'' || c == U'’') && !cur.empty() &&
                    i + 1 < s.size() && text::is_letter_or_digit(s[i + 1]);
      if (joiner) {
        cur.push_back(c);
      } else {
        flush();
        out.push_back(text::to_utf8(std::u32string(1, c)));
      }
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::unique_ptr<std::istream> open_input(const std::filesystem::path& path) {
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace fapinette
