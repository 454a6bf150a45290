#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fapinette/errors.hpp"
#include "fapinette/pos.hpp"

namespace fapinette {

struct Gloss {
  std::string raw;
  /// Lemma tokens of `raw`; absent when the dump carries none.
  std::optional<std::vector<std::string>> lemmatized;

  bool operator==(const Gloss&) const = default;
};

/// One normalized dictionary article.
struct DictionaryRecord {
  std::string lemma;
  PosTag pos = PosTag::N;
  std::vector<Gloss> glosses;
  std::vector<std::string> derived;
  std::vector<std::string> related;

  bool operator==(const DictionaryRecord&) const = default;
};

struct MorphyNetRow {
  std::string source_lemma;
  std::string target_lemma;
  PosTag source_pos = PosTag::N;
  PosTag target_pos = PosTag::N;

  bool operator==(const MorphyNetRow&) const = default;
};

/// Returns the reason the record is invalid, or nullopt.
std::optional<std::string> validate_record(const DictionaryRecord& r);

struct SkipEntry {
  size_t line = 0;
  std::string reason;
};

/// Lines a parser dropped, with 1-based line numbers.
class SkipReport {
public:
  void add(size_t line, std::string reason) { entries_.push_back({line, std::move(reason)}); }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<SkipEntry>& entries() const { return entries_; }
  /// `line<TAB>reason`, one entry per line, no header.
  void write_tsv(std::ostream& out) const;

private:
  std::vector<SkipEntry> entries_;
};

/// Pull-style reader over a line-oriented stream. Every input line is either
/// yielded or recorded in the skip report, so yielded + skipped == lines.
template <typename T>
class LineReader {
public:
  LineReader(std::istream& in, SkipReport& skips) : in_(in), skips_(skips) {}
  virtual ~LineReader() = default;

  std::optional<T> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string reason;
      if (auto v = parse_line(line, reason)) return v;
      skips_.add(line_no_, reason);
    }
    if (in_.bad()) throw_read_error();
    return std::nullopt;
  }

  std::vector<T> read_all() {
    std::vector<T> out;
    while (auto v = next()) out.push_back(std::move(*v));
    return out;
  }

  size_t lines_read() const { return line_no_; }

protected:
  /// Returns the parsed value or sets `reason` and returns nullopt.
  virtual std::optional<T> parse_line(const std::string& line, std::string& reason) = 0;

private:
  [[noreturn]] void throw_read_error() const {
    throw IoError("read error after line " + std::to_string(line_no_));
  }

  std::istream& in_;
  SkipReport& skips_;
  size_t line_no_ = 0;
};

/// Kaikki (wiktextract) JSONL: `word`, `pos`, `senses[].glosses[]`,
/// `derived[].word`, `related[].word`.
class KaikkiReader final : public LineReader<DictionaryRecord> {
public:
  KaikkiReader(std::istream& in, SkipReport& skips, PosMap pos_map = PosMap::defaults())
      : LineReader(in, skips), pos_map_(std::move(pos_map)) {}

protected:
  std::optional<DictionaryRecord> parse_line(const std::string& line, std::string& reason) override;

private:
  PosMap pos_map_;
};

/// MorphyNet TSV: source lemma, target lemma, source POS, target POS, then any
/// number of ignored columns (affix, process type).
class MorphyNetReader final : public LineReader<MorphyNetRow> {
public:
  MorphyNetReader(std::istream& in, SkipReport& skips, PosMap pos_map = PosMap::defaults())
      : LineReader(in, skips), pos_map_(std::move(pos_map)) {}

protected:
  std::optional<MorphyNetRow> parse_line(const std::string& line, std::string& reason) override;

private:
  PosMap pos_map_;
};

/// The canonical interchange format, one DictionaryRecord per line.
class NormalizedReader final : public LineReader<DictionaryRecord> {
public:
  using LineReader::LineReader;

protected:
  std::optional<DictionaryRecord> parse_line(const std::string& line, std::string& reason) override;
};

std::vector<DictionaryRecord> parse_kaikki(std::istream& in, SkipReport& skips,
                                           const PosMap& pos_map = PosMap::defaults());
std::vector<MorphyNetRow> parse_morphynet(std::istream& in, SkipReport& skips,
                                          const PosMap& pos_map = PosMap::defaults());
std::vector<DictionaryRecord> parse_normalized(std::istream& in, SkipReport& skips);

/// Serializes one record as a single line of normalized JSONL (no newline).
std::string emit_normalized(const DictionaryRecord& r);

/// Lowercases, splits on whitespace and detaches punctuation as separate
/// tokens. Hyphens and apostrophes between two letters stay inside the word.
/// No stemming: "accusing" stays "accusing".
std::vector<std::string> default_lemmatize(std::string_view raw);

/// Opens a file for reading or throws IoError naming the path.
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

}  // namespace fapinette
