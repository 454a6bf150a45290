#include "fapinette/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "fapinette/errors.hpp"
#include "fapinette/text.hpp"

namespace fapinette {

const std::vector<std::string> kPairsColumns = {"lemma1", "cat1",  "lemma2",   "cat2",
                                                "stem",   "exponent1", "exponent2"};
const std::vector<std::string> kDefsColumns = {"lemma1",    "cat1",      "lemma2",
                                               "cat2",      "stem",      "exponent1",
                                               "exponent2", "definition2", "lemmatized_definition2"};

namespace {

PairKey unordered(const PairKey& k) { return std::min(k, k.reversed()); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t at = line.find(sep, pos);
    if (at == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, at - pos));
    pos = at + 1;
  }
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  for (auto& t : split(s, ' '))
    if (!t.empty()) out.push_back(std::move(t));
  return out;
}

template <typename T>
void sort_by_key(std::vector<T>& v) {
  std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.key() < b.key(); });
}

std::string row_key(const PairKey& k) {
  return k.lemma1 + "_" + to_string(k.cat1) + " -> " + k.lemma2 + "_" + to_string(k.cat2);
}

void write_entry_fields(std::ostream& out, const LexiconEntry& e) {
  out << e.lemma1 << '\t' << to_char(e.cat1) << '\t' << e.lemma2 << '\t' << to_char(e.cat2) << '\t'
      << e.stem << '\t' << e.exponent1.render() << '\t' << e.exponent2.render();
}

/// Column positions resolved from the header (or the configured layout).
class Columns {
public:
  Columns(const std::vector<std::string>& names, const std::vector<std::string>& required,
          const std::string& file) {
    for (const auto& r : required) {
      auto it = std::find(names.begin(), names.end(), r);
      if (it == names.end()) throw ParseError(file + ": header mismatch, missing column '" + r + "'");
      index_[r] = static_cast<size_t>(it - names.begin());
      width_ = std::max(width_, index_[r] + 1);
    }
  }
  size_t width() const { return width_; }
  const std::string& get(const std::vector<std::string>& f, const std::string& name) const {
    return f[index_.at(name)];
  }

private:
  std::map<std::string, size_t> index_;
  size_t width_ = 0;
};

LexiconEntry parse_entry(const std::vector<std::string>& f, const Columns& cols) {
  LexiconEntry e;
  e.lemma1 = cols.get(f, "lemma1");
  e.lemma2 = cols.get(f, "lemma2");
  auto c1 = parse_pos_tag(cols.get(f, "cat1"));
  auto c2 = parse_pos_tag(cols.get(f, "cat2"));
  if (!c1 || !c2) throw ParseError("invalid category");
  e.cat1 = *c1;
  e.cat2 = *c2;
  e.stem = cols.get(f, "stem");
  e.exponent1 = Pattern::parse(cols.get(f, "exponent1"));
  e.exponent2 = Pattern::parse(cols.get(f, "exponent2"));
  return e;
}

/// Shared driver for both table readers.
template <typename T, typename Parse>
std::vector<T> read_rows(std::istream& in, const ReadOptions& opts,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& layout, std::vector<ReadIssue>& issues,
                         const std::string& name, Parse parse) {
  std::vector<T> rows;
  std::string line;
  size_t line_no = 0;
  std::vector<std::string> header = layout;
  if (opts.header) {
    if (!std::getline(in, line)) throw ParseError(name + ": missing header row");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    header = split(line, '\t');
  }
  Columns cols(header, required, name);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string reason;
    try {
      auto f = split(line, '\t');
      if (f.size() < cols.width()) throw ParseError("expected " + std::to_string(cols.width()) + " fields");
      T row = parse(f, cols);
      if (auto why = [&] {
            if constexpr (std::is_same_v<T, LexiconEntry>) return check_entry(row);
            else return check_def(row);
          }()) {
        reason = *why;
      } else {
        rows.push_back(std::move(row));
        continue;
      }
    } catch (const ParseError& e) {
      reason = e.what();
    }
    if (opts.strict) throw ParseError(name + ":" + std::to_string(line_no) + ": " + reason);
    issues.push_back({name, line_no, reason});
  }
  if (in.bad()) throw IoError(name + ": read error");
  sort_by_key(rows);
  return rows;
}

}  // namespace

std::optional<std::string> check_entry(const LexiconEntry& e) {
  if (e.lemma1.empty() || e.lemma2.empty()) return "empty lemma";
  if (e.lemma1 == e.lemma2) return "identical lemmas";
  if (e.exponent1.slots() != e.exponent2.slots()) return "exponents differ in slot count";
  if (e.exponent1.is_bare() && e.exponent2.is_bare()) return "both exponents are bare";
  auto c1 = apply_pattern(e.exponent1, text::to_u32(e.lemma1));
  if (!c1) return "exponent1 " + e.exponent1.render() + " does not match " + e.lemma1;
  auto c2 = apply_pattern(e.exponent2, text::to_u32(e.lemma2));
  if (!c2) return "exponent2 " + e.exponent2.render() + " does not match " + e.lemma2;
  if (*c1 != *c2) return "captures differ between lemma1 and lemma2";
  if (text::to_utf8(join_captures(*c1)) != e.stem) return "stem does not equal the captures";
  return std::nullopt;
}

std::optional<std::string> check_def(const DefEntry& d) {
  if (auto why = check_entry(d.entry)) return why;
  if (d.definition2.empty()) return "empty definition";
  for (const auto& t : d.lemmatized_definition2)
    if (text::same_word(t, d.entry.lemma1)) return std::nullopt;
  return "lemma1 absent from lemmatized definition";
}

std::vector<std::string> check_tables(const Tables& t) {
  std::vector<std::string> out;
  std::map<PairKey, const LexiconEntry*> by_key;
  for (const auto& e : t.pairs) {
    if (!by_key.emplace(e.key(), &e).second) out.push_back("duplicate pairs row " + row_key(e.key()));
  }
  for (const auto& e : t.pairs) {
    auto it = by_key.find(e.key().reversed());
    if (it == by_key.end() || !(*it->second == e.reversed()))
      out.push_back("pairs row without symmetric counterpart " + row_key(e.key()));
  }
  std::set<PairKey> def_keys;
  for (const auto& d : t.defs) {
    if (!def_keys.insert(d.key()).second) out.push_back("duplicate defs row " + row_key(d.key()));
    auto it = by_key.find(d.key());
    if (it == by_key.end() || !(*it->second == d.entry))
      out.push_back("defs row not in pairs " + row_key(d.key()));
  }
  return out;
}

Tables materialize(const std::vector<FapAnnotation>& annotations) {
  std::map<PairKey, const FapAnnotation*> chosen;
  for (const auto& a : annotations) {
    LexiconEntry e{a.pair.lemma1, a.pair.cat1, a.pair.lemma2, a.pair.cat2,
                   a.stem,        a.pattern.left, a.pattern.right};
    if (auto why = check_entry(e)) throw InvariantError(row_key(e.key()) + ": " + *why);
    auto [it, inserted] = chosen.emplace(unordered(a.pair.key()), &a);
    if (inserted) continue;
    const FapAnnotation* cur = it->second;
    if (a.score > cur->score || (a.score == cur->score && a.pair.key() < cur->pair.key())) it->second = &a;
  }
  Tables t;
  std::map<PairKey, LexiconEntry> rows;
  for (const auto& [k, a] : chosen) {
    LexiconEntry e{a->pair.lemma1, a->pair.cat1, a->pair.lemma2, a->pair.cat2,
                   a->stem,        a->pattern.left, a->pattern.right};
    rows.emplace(e.key(), e);
    rows.emplace(e.key().reversed(), e.reversed());
  }
  for (auto& [k, e] : rows) t.pairs.push_back(std::move(e));
  std::set<PairKey> seen_defs;
  for (const auto& a : annotations) {
    if (a.pair.provenance != Provenance::Definition || !a.pair.definition) continue;
    if (!seen_defs.insert(a.pair.key()).second) continue;
    DefEntry d;
    d.entry = *std::lower_bound(t.pairs.begin(), t.pairs.end(), a.pair.key(),
                                [](const LexiconEntry& e, const PairKey& k) { return e.key() < k; });
    d.definition2 = text::flatten_whitespace(a.pair.definition->raw);
    d.lemmatized_definition2 = split_tokens(text::flatten_whitespace(text::join(a.pair.definition->lemmatized, " ")));
    if (auto why = check_def(d)) throw InvariantError(row_key(d.key()) + ": " + *why);
    t.defs.push_back(std::move(d));
  }
  sort_by_key(t.defs);
  return t;
}

void write_pairs(std::ostream& out, const std::vector<LexiconEntry>& pairs) {
  out << text::join(kPairsColumns, "\t") << '\n';
  for (const auto& e : pairs) {
    write_entry_fields(out, e);
    out << '\n';
  }
}

void write_defs(std::ostream& out, const std::vector<DefEntry>& defs) {
  out << text::join(kDefsColumns, "\t") << '\n';
  for (const auto& d : defs) {
    write_entry_fields(out, d.entry);
    out << '\t' << d.definition2 << '\t' << text::join(d.lemmatized_definition2, " ") << '\n';
  }
}

void write_tables(const Tables& t, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const char* name, auto&& body) {
    auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
  };
  write("pairs.tsv", [&](std::ostream& o) { write_pairs(o, t.pairs); });
  write("defs.tsv", [&](std::ostream& o) { write_defs(o, t.defs); });
}

std::vector<LexiconEntry> read_pairs(std::istream& in, const ReadOptions& opts,
                                     std::vector<ReadIssue>& issues, const std::string& name) {
  return read_rows<LexiconEntry>(in, opts, kPairsColumns, opts.pairs_columns, issues, name,
                                 [](const std::vector<std::string>& f, const Columns& c) {
                                   return parse_entry(f, c);
                                 });
}

std::vector<DefEntry> read_defs(std::istream& in, const ReadOptions& opts,
                                std::vector<ReadIssue>& issues, const std::string& name) {
  return read_rows<DefEntry>(in, opts, kDefsColumns, opts.defs_columns, issues, name,
                             [](const std::vector<std::string>& f, const Columns& c) {
                               DefEntry d;
                               d.entry = parse_entry(f, c);
                               d.definition2 = c.get(f, "definition2");
                               d.lemmatized_definition2 = split_tokens(c.get(f, "lemmatized_definition2"));
                               return d;
                             });
}

ReadResult read_tables(const std::filesystem::path& dir, const ReadOptions& opts) {
  ReadResult r;
  {
    auto path = dir / "pairs.tsv";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    r.tables.pairs = read_pairs(in, opts, r.issues, path.string());
  }
  {
    auto path = dir / "defs.tsv";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    r.tables.defs = read_defs(in, opts, r.issues, path.string());
  }
  r.table_issues = check_tables(r.tables);
  if (opts.strict && !r.table_issues.empty())
    throw ParseError(dir.string() + ": " + r.table_issues.front());
  return r;
}

BuildStats compute_stats(const Tables& t) {
  BuildStats s;
  s.ordered_pairs = t.pairs.size();
  s.defs = t.defs.size();
  std::set<PairKey> sets, def_sets;
  for (const auto& e : t.pairs) sets.insert(unordered(e.key()));
  for (const auto& d : t.defs) def_sets.insert(unordered(d.key()));
  s.pair_sets = sets.size();
  s.defs_pair_sets = def_sets.size();
  return s;
}

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

std::string format_stats(const BuildStats& s) {
  std::ostringstream out;
  auto line = [&](const char* name, const std::string& v) {
    out << name << std::string(24 - std::string(name).size(), ' ') << v << '\n';
  };
  line("ordered_pairs", std::to_string(s.ordered_pairs));
  line("defs", std::to_string(s.defs));
  line("defs_ratio", format_ratio(s.defs_ratio()));
  line("pair_sets", std::to_string(s.pair_sets));
  line("defs_pair_sets", std::to_string(s.defs_pair_sets));
  line("pair_sets_ratio", format_ratio(s.pair_sets_ratio()));
  return out.str();
}

std::string stats_json(const BuildStats& s) {
  auto round3 = [](double r) { return std::round(r * 1000.0) / 1000.0; };
  nlohmann::ordered_json j;
  j["ordered_pairs"] = s.ordered_pairs;
  j["defs"] = s.defs;
  j["defs_ratio"] = round3(s.defs_ratio());
  j["pair_sets"] = s.pair_sets;
  j["defs_pair_sets"] = s.defs_pair_sets;
  j["pair_sets_ratio"] = round3(s.pair_sets_ratio());
  return j.dump();
}

}  // namespace fapinette
