#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fapinette/analogy.hpp"
#include "fapinette/candidates.hpp"
#include "fapinette/pattern.hpp"

namespace fapinette {

struct ExpressionStats {
  Pattern expression;
  /// Distinct retained lemmas the expression matches.
  size_t support = 0;
};

using StatsMap = std::map<Pattern, ExpressionStats>;

struct GeneralityResult {
  /// Surviving pairs with the patterns they keep.
  PatternSets retained;
  /// Number of distinct candidate pairs each pattern pair is attributed to.
  std::map<PatternPair, size_t> attribution;
  /// Always-retain pairs given up because no alternation exists, with the reason.
  std::vector<std::pair<PairKey, std::string>> dropped;
};

/// Keeps pattern pairs attributed to at least min_pattern_support pairs and
/// the pairs owning at least one of them. Always-retain members of `pairs`
/// survive regardless: with their surviving patterns, else all their
/// patterns, else their minimal alternation.
GeneralityResult filter_by_generality(const CandidateSet& pairs, const PatternSets& candidates,
                                      size_t min_pattern_support, size_t max_slots = 2);
PatternSets filter_by_generality(const PatternSets& candidates, size_t min_pattern_support);

/// The pattern pair capturing the most material in both lemmas. Ties go to
/// fewer slots, then the earliest and longest first capture.
/// Throws NoAlternation when the lemmas share nothing usable.
PatternPair minimal_alternation(std::string_view lemma1, std::string_view lemma2,
                                size_t max_slots = 2);

/// Distinct lemmas of the retained pairs, sorted.
std::vector<std::string> retained_lemmas(const PatternSets& retained);

StatsMap compute_expression_stats(const std::vector<std::string>& lemmas,
                                  const std::set<Pattern>& patterns, size_t threads = 1);

struct FapAnnotation {
  CandidatePair pair;
  PatternPair pattern;
  std::string stem;
  size_t score = 0;
  std::optional<PatternPair> runner_up;
  size_t runner_up_score = 0;
};

/// support(left) + support(right); patterns missing from `stats` count 0.
size_t pattern_score(const PatternPair& p, const StatsMap& stats);

/// True when `a` ranks strictly before `b` in FAP selection order.
bool fap_ranks_before(const PatternPair& a, size_t score_a, const PatternPair& b, size_t score_b);

/// Picks the highest-scoring pattern pair. Throws InvariantError when the set
/// is empty or the chosen pattern does not fit the pair.
FapAnnotation select_fap(const CandidatePair& pair, const std::set<PatternPair>& surviving,
                         const StatsMap& stats);

}  // namespace fapinette
