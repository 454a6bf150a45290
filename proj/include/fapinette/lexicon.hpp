#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "fapinette/candidates.hpp"
#include "fapinette/fap.hpp"
#include "fapinette/pattern.hpp"
#include "fapinette/pos.hpp"

namespace fapinette {

/// One row of pairs.tsv.
struct LexiconEntry {
  std::string lemma1;
  PosTag cat1 = PosTag::N;
  std::string lemma2;
  PosTag cat2 = PosTag::N;
  std::string stem;
  Pattern exponent1;
  Pattern exponent2;

  PairKey key() const { return {lemma1, cat1, lemma2, cat2}; }
  PatternPair pattern() const { return {exponent1, exponent2}; }
  LexiconEntry reversed() const { return {lemma2, cat2, lemma1, cat1, stem, exponent2, exponent1}; }
  bool operator==(const LexiconEntry&) const = default;
};

/// One row of defs.tsv: a pairs.tsv row plus the definition of lemma2.
struct DefEntry {
  LexiconEntry entry;
  std::string definition2;
  std::vector<std::string> lemmatized_definition2;

  PairKey key() const { return entry.key(); }
  bool operator==(const DefEntry&) const = default;
};

struct Tables {
  std::vector<LexiconEntry> pairs;  ///< sorted by key
  std::vector<DefEntry> defs;       ///< sorted by key
  bool operator==(const Tables&) const = default;
};

/// Builds both tables. Annotations of the two orientations of one lemma pair
/// are resolved to a single pattern (higher score, then smaller key), which
/// then yields both pairs.tsv rows. Definition-provenance annotations add a
/// defs.tsv row in their own orientation. Throws InvariantError when an
/// annotation's pattern does not fit its lemmas.
Tables materialize(const std::vector<FapAnnotation>& annotations);

/// Returns a description of the first violated row invariant, if any.
std::optional<std::string> check_entry(const LexiconEntry& e);
std::optional<std::string> check_def(const DefEntry& d);
/// Whole-table invariants: pairs symmetry and defs ⊆ pairs.
std::vector<std::string> check_tables(const Tables& t);

extern const std::vector<std::string> kPairsColumns;
extern const std::vector<std::string> kDefsColumns;

void write_pairs(std::ostream& out, const std::vector<LexiconEntry>& pairs);
void write_defs(std::ostream& out, const std::vector<DefEntry>& defs);
/// Writes pairs.tsv and defs.tsv into `dir`, creating it if needed.
void write_tables(const Tables& t, const std::filesystem::path& dir);

struct ReadOptions {
  bool strict = true;
  bool header = true;
  /// Column order of headerless files; defaults to the standard order.
  std::vector<std::string> pairs_columns = kPairsColumns;
  std::vector<std::string> defs_columns = kDefsColumns;
};

struct ReadIssue {
  std::string file;
  size_t line = 0;
  std::string reason;
};

struct ReadResult {
  Tables tables;
  /// Rows skipped in lenient mode.
  std::vector<ReadIssue> issues;
  /// Whole-table invariant violations found after lenient skipping.
  std::vector<std::string> table_issues;
};

/// Reads and validates both tables. In strict mode the first invalid row
/// throws ParseError naming file and line; in lenient mode it is skipped and
/// reported. A missing column is always fatal.
ReadResult read_tables(const std::filesystem::path& dir, const ReadOptions& opts = {});
std::vector<LexiconEntry> read_pairs(std::istream& in, const ReadOptions& opts,
                                     std::vector<ReadIssue>& issues, const std::string& name = "pairs.tsv");
std::vector<DefEntry> read_defs(std::istream& in, const ReadOptions& opts,
                                std::vector<ReadIssue>& issues, const std::string& name = "defs.tsv");

struct BuildStats {
  size_t ordered_pairs = 0;
  size_t defs = 0;
  size_t pair_sets = 0;
  size_t defs_pair_sets = 0;

  double defs_ratio() const { return ordered_pairs ? double(defs) / double(ordered_pairs) : 0.0; }
  double pair_sets_ratio() const {
    return pair_sets ? double(defs_pair_sets) / double(pair_sets) : 0.0;
  }
  bool operator==(const BuildStats&) const = default;
};

BuildStats compute_stats(const Tables& t);
/// Aligned `name  value` lines; ratios with 3 decimals.
std::string format_stats(const BuildStats& s);
std::string stats_json(const BuildStats& s);
/// Fixed 3-decimal rendering used by every ratio in reports.
std::string format_ratio(double r);

}  // namespace fapinette
