#include "fapinette/analogy.hpp"

#include <algorithm>
#include <vector>

#include "fapinette/errors.hpp"
#include "fapinette/text.hpp"
#include "parallel.hpp"

namespace fapinette {

namespace {

bool aligned(std::u32string_view a, std::u32string_view b, std::u32string_view c,
             std::u32string_view d) {
  const size_t A = a.size(), B = b.size(), C = c.size();
  // State (i, j, k); the position in d is implied: l = j + k - i.
  std::vector<char> reach((A + 1) * (B + 1) * (C + 1), 0);
  auto at = [&](size_t i, size_t j, size_t k) -> char& { return reach[(i * (B + 1) + j) * (C + 1) + k]; };
  at(0, 0, 0) = 1;
  // Every move advances at least one of i, j, k and retreats none, so
  // lexicographic order is a topological order.
  for (size_t i = 0; i <= A; ++i)
    for (size_t j = 0; j <= B; ++j)
      for (size_t k = 0; k <= C; ++k) {
        if (!at(i, j, k)) continue;
        if (j + k < i) continue;
        const size_t l = j + k - i;
        if (l > d.size()) continue;
        if (i < A && j < B && a[i] == b[j]) at(i + 1, j + 1, k) = 1;
        if (k < C && l < d.size() && c[k] == d[l]) at(i, j, k + 1) = 1;
        if (i < A && k < C && a[i] == c[k]) at(i + 1, j, k + 1) = 1;
        if (j < B && l < d.size() && b[j] == d[l]) at(i, j + 1, k) = 1;
      }
  return at(A, B, C);
}

size_t common_prefix(std::u32string_view x, std::u32string_view y) {
  size_t n = 0;
  while (n < x.size() && n < y.size() && x[n] == y[n]) ++n;
  return n;
}

size_t common_suffix(std::u32string_view x, std::u32string_view y) {
  size_t n = 0;
  while (n < x.size() && n < y.size() && x[x.size() - 1 - n] == y[y.size() - 1 - n]) ++n;
  return n;
}

struct Affix {
  size_t prefix = 0;
  size_t suffix = 0;
};

/// Prefix and suffix shared by every distinct word of the list. With fewer
/// than three words the shared affix is just the pair's own and says nothing
/// about the rest of the bucket, so no floor applies.
Affix shared_affix(const std::vector<std::u32string>& words) {
  if (words.size() < 3) return {};
  Affix f{words[0].size(), words[0].size()};
  for (const auto& w : words) {
    f.prefix = std::min(f.prefix, common_prefix(words[0], w));
    f.suffix = std::min(f.suffix, common_suffix(words[0], w));
  }
  return f;
}

/// Key: captures on X followed by captures on Y.
using SideKey = std::pair<Captures, Captures>;
using SidePatterns = std::map<SideKey, std::vector<Pattern>>;

void add_inner(std::u32string_view xi, std::u32string_view yi, size_t from, size_t slots_left,
               std::vector<std::u32string>& mids, std::vector<std::vector<std::u32string>>& out) {
  if (slots_left == 0) return;
  // Next literal starts after at least one captured code point and leaves one for the next slot.
  for (size_t u = from + 1; u + 1 < xi.size(); ++u) {
    for (size_t v = u + 1; v < xi.size(); ++v) {
      std::u32string_view lit = xi.substr(u, v - u);
      if (yi.size() < 3 || yi.substr(1, yi.size() - 2).find(lit) == std::u32string_view::npos) break;
      mids.emplace_back(lit);
      out.push_back(mids);
      add_inner(xi, yi, v, slots_left - 1, mids, out);
      mids.pop_back();
    }
  }
}

/// Every pattern with at most max_slots slots matching both x and y whose
/// outer literals extend at least to `floor`.
SidePatterns side_patterns(std::u32string_view x, std::u32string_view y, Affix floor,
                           size_t max_slots) {
  SidePatterns out;
  const size_t lcp = common_prefix(x, y);
  const size_t lcs = common_suffix(x, y);
  const size_t shortest = std::min(x.size(), y.size());
  std::set<Pattern> seen;
  for (size_t p = floor.prefix; p <= lcp; ++p) {
    for (size_t s = floor.suffix; s <= lcs; ++s) {
      if (p + s + 1 > shortest) break;
      std::u32string pre(x.substr(0, p));
      std::u32string suf(x.substr(x.size() - s));
      std::u32string_view xi = x.substr(p, x.size() - p - s);
      std::u32string_view yi = y.substr(p, y.size() - p - s);
      std::vector<std::vector<std::u32string>> inner{{}};
      std::vector<std::u32string> mids;
      if (max_slots > 1) add_inner(xi, yi, 0, max_slots - 1, mids, inner);
      for (const auto& m : inner) {
        std::vector<std::u32string> lits{pre};
        lits.insert(lits.end(), m.begin(), m.end());
        lits.push_back(suf);
        Pattern pat = Pattern::from_literals(std::move(lits));
        if (!seen.insert(pat).second) continue;
        auto cx = apply_pattern(pat, x);
        if (!cx) continue;
        auto cy = apply_pattern(pat, y);
        if (!cy) continue;
        out[{std::move(*cx), std::move(*cy)}].push_back(std::move(pat));
      }
    }
  }
  return out;
}

struct BucketWords {
  std::vector<std::u32string> left, right;
  Affix left_floor, right_floor;
};

BucketWords prepare(const CandidateSet& bucket) {
  BucketWords w;
  std::set<std::u32string> l, r;
  for (const auto& c : bucket) {
    w.left.push_back(text::to_u32(c.lemma1));
    w.right.push_back(text::to_u32(c.lemma2));
    l.insert(w.left.back());
    r.insert(w.right.back());
  }
  w.left_floor = shared_affix({l.begin(), l.end()});
  w.right_floor = shared_affix({r.begin(), r.end()});
  return w;
}

std::set<PatternPair> member_patterns(const BucketWords& w, size_t member,
                                      const EnumerateOptions& opts) {
  std::set<PatternPair> result;
  const auto& A = w.left[member];
  const auto& B = w.right[member];
  size_t partners = 0;
  for (size_t q = 0; q < w.left.size() && partners < opts.max_partners; ++q) {
    if (q == member) continue;
    const auto& C = w.left[q];
    const auto& D = w.right[q];
    if (A == C || B == D) continue;
    ++partners;
    SidePatterns left = side_patterns(A, C, w.left_floor, opts.max_slots);
    if (left.empty()) continue;
    SidePatterns right = side_patterns(B, D, w.right_floor, opts.max_slots);
    for (const auto& [key, lps] : left) {
      auto it = right.find(key);
      if (it == right.end()) continue;
      for (const auto& lp : lps)
        for (const auto& rp : it->second)
          if (!(lp.is_bare() && rp.is_bare())) result.insert({lp, rp});
    }
  }
  return result;
}

}  // namespace

bool is_analogy(std::u32string_view a, std::u32string_view b, std::u32string_view c,
                std::u32string_view d, size_t max_length) {
  for (auto s : {a, b, c, d})
    if (s.size() > max_length)
      throw AnalogyUndecided("analogy check above length bound " + std::to_string(max_length));
  if (a.size() + d.size() != b.size() + c.size()) return false;
  if (edit_distance(a, b) != edit_distance(c, d)) return false;
  if (edit_distance(a, c) != edit_distance(b, d)) return false;
  return aligned(a, b, c, d);
}

bool is_analogy(std::string_view a, std::string_view b, std::string_view c, std::string_view d,
                size_t max_length) {
  return is_analogy(text::to_u32(a), text::to_u32(b), text::to_u32(c), text::to_u32(d), max_length);
}

Buckets bucket_by_signature(const CandidateSet& pairs, const BucketOptions& opts) {
  if (opts.min_bucket == 0) throw InvariantError("min_bucket must be at least 1");
  Buckets all;
  for (const auto& c : pairs) {
    auto sig = opts.case_fold ? signature(text::lowercase(c.lemma1), text::lowercase(c.lemma2))
                              : signature(c.lemma1, c.lemma2);
    all[std::move(sig)].push_back(c);
  }
  Buckets out;
  for (auto& [sig, members] : all) {
    std::sort(members.begin(), members.end(),
              [](const CandidatePair& a, const CandidatePair& b) { return a.key() < b.key(); });
    size_t counted = 0;
    for (const auto& c : members)
      if (!c.always_retain || opts.count_morphynet_in_buckets) ++counted;
    if (counted >= opts.min_bucket) {
      out.emplace(sig, std::move(members));
      continue;
    }
    CandidateSet kept;
    for (auto& c : members)
      if (c.always_retain) kept.push_back(std::move(c));
    if (!kept.empty()) out.emplace(sig, std::move(kept));
  }
  return out;
}

PatternSets enumerate_pattern_pairs(const CandidateSet& bucket, const EnumerateOptions& opts) {
  Buckets one;
  one.emplace(AnalogySignature{}, bucket);
  return enumerate_all(one, opts);
}

PatternSets enumerate_all(const Buckets& buckets, const EnumerateOptions& opts) {
  if (opts.max_slots == 0 || opts.max_partners == 0)
    throw InvariantError("max_slots and max_partners must be at least 1");
  std::vector<const CandidateSet*> sets;
  std::vector<BucketWords> words;
  std::vector<std::pair<size_t, size_t>> items;
  for (const auto& [sig, members] : buckets) {
    if (members.size() < 2) continue;
    sets.push_back(&members);
    words.push_back(prepare(members));
    for (size_t m = 0; m < members.size(); ++m) items.emplace_back(sets.size() - 1, m);
  }
  std::vector<std::set<PatternPair>> results(items.size());
  detail::parallel_for(items.size(), opts.threads, [&](size_t i) {
    results[i] = member_patterns(words[items[i].first], items[i].second, opts);
  });
  PatternSets out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (results[i].empty()) continue;
    auto& dst = out[(*sets[items[i].first])[items[i].second].key()];
    dst.insert(results[i].begin(), results[i].end());
  }
  return out;
}

}  // namespace fapinette
