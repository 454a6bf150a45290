#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "fapinette/candidates.hpp"
#include "fapinette/pattern.hpp"
#include "fapinette/signature.hpp"

namespace fapinette {

/// Exact formal-analogy check a:b::c:d. The four strings must be alignable so
/// that each column pairs a with b and c with d, or a with c and b with d,
/// and the edit distances agree on both diagonals of the proportion.
/// Throws AnalogyUndecided if any string exceeds `max_length` code points.
bool is_analogy(std::u32string_view a, std::u32string_view b, std::u32string_view c,
                std::u32string_view d, size_t max_length = 32);
bool is_analogy(std::string_view a, std::string_view b, std::string_view c, std::string_view d,
                size_t max_length = 32);

struct BucketOptions {
  size_t min_bucket = 5;
  bool count_morphynet_in_buckets = false;
  /// Lowercase both lemmas before computing the signature.
  bool case_fold = false;
};

using Buckets = std::map<AnalogySignature, CandidateSet>;

/// Groups pairs by signature. A bucket whose counted pairs fall below
/// min_bucket keeps only its always-retain members (or vanishes).
Buckets bucket_by_signature(const CandidateSet& pairs, const BucketOptions& opts = {});

struct EnumerateOptions {
  size_t max_slots = 2;
  size_t max_partners = std::numeric_limits<size_t>::max();
  size_t threads = 1;
};

using PatternSets = std::map<PairKey, std::set<PatternPair>>;

/// Pattern pairs for each member of one bucket, obtained by comparing it with
/// every partner through exchange of the means. Outer literals range from the
/// affix shared by the whole bucket side (when it has three or more distinct
/// lemmas) up to the affix shared with the partner. Members without any
/// pattern are absent from the result.
PatternSets enumerate_pattern_pairs(const CandidateSet& bucket, const EnumerateOptions& opts = {});

/// Runs enumerate_pattern_pairs over every bucket and merges the results.
PatternSets enumerate_all(const Buckets& buckets, const EnumerateOptions& opts = {});

}  // namespace fapinette
