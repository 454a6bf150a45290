#pragma once

#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fapinette/ingest.hpp"
#include "fapinette/pos.hpp"

namespace fapinette {

enum class Provenance { Definition, MorphSection, MorphyNet };

std::string to_string(Provenance p);

struct Definition {
  std::string raw;
  std::vector<std::string> lemmatized;

  bool operator==(const Definition&) const = default;
};

struct PairKey {
  std::string lemma1;
  PosTag cat1 = PosTag::N;
  std::string lemma2;
  PosTag cat2 = PosTag::N;

  auto operator<=>(const PairKey&) const = default;
  bool operator==(const PairKey&) const = default;
  PairKey reversed() const { return {lemma2, cat2, lemma1, cat1}; }
};

/// An ordered candidate. lemma2 is the defined or derived side for
/// Definition and MorphSection provenance.
struct CandidatePair {
  std::string lemma1;
  PosTag cat1 = PosTag::N;
  std::string lemma2;
  PosTag cat2 = PosTag::N;
  Provenance provenance = Provenance::Definition;
  std::optional<Definition> definition;
  /// Set when any source of the pair was MorphyNet; such pairs bypass both filters.
  bool always_retain = false;

  PairKey key() const { return {lemma1, cat1, lemma2, cat2}; }
  bool operator==(const CandidatePair&) const = default;
};

/// Candidates sorted by key, one per key.
using CandidateSet = std::vector<CandidatePair>;

/// Lemma → attested POS tags, with a lowercase side index for
/// case-insensitive token lookup.
class LexiconIndex {
public:
  static LexiconIndex build(const std::vector<DictionaryRecord>& records);

  void add(const std::string& lemma, PosTag pos);
  const std::set<PosTag>* find(const std::string& lemma) const;
  /// Headword lemmas denoted by a definition token: the exact lemma when
  /// indexed, otherwise every lemma equal to the token after lowercasing.
  std::vector<std::string> resolve_token(const std::string& token) const;
  size_t size() const { return tags_.size(); }

private:
  std::unordered_map<std::string, std::set<PosTag>> tags_;
  std::unordered_map<std::string, std::vector<std::string>> by_lower_;
};

/// Tokens never matched against headwords inside definitions.
class StopList {
public:
  /// Disabled: nothing is stopped.
  static StopList none();
  /// Single-code-point tokens plus a built-in function-word list for `lang`
  /// (en, fr, es, de; other tags get only the length rule).
  static StopList builtin(const std::string& lang);
  /// Single-code-point tokens plus one word per line from `in` ('#' comments).
  static StopList from_stream(std::istream& in);

  bool contains(const std::string& token) const;
  bool enabled() const { return enabled_; }

private:
  bool enabled_ = false;
  std::unordered_set<std::string> words_;
};

CandidateSet pairs_from_definitions(const std::vector<DictionaryRecord>& records,
                                    const LexiconIndex& index, const StopList& stop);
CandidateSet pairs_from_morph_sections(const std::vector<DictionaryRecord>& records,
                                       const LexiconIndex& index);
CandidateSet pairs_from_morphynet(const std::vector<MorphyNetRow>& rows);

/// Unions the three sources. A key present in several sources keeps the
/// highest-priority provenance (Definition, then MorphSection, then
/// MorphyNet) and is always-retain if any source was MorphyNet.
CandidateSet merge_candidates(const CandidateSet& definitions, const CandidateSet& sections,
                              const CandidateSet& morphynet);

/// `lemma1 cat1 lemma2 cat2 provenance` debug dump with header.
void write_candidates_tsv(std::ostream& out, const CandidateSet& pairs);

}  // namespace fapinette
