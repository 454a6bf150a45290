#include "fapinette/fap.hpp"

#include <algorithm>
#include <tuple>

#include "fapinette/errors.hpp"
#include "fapinette/text.hpp"
#include "parallel.hpp"

namespace fapinette {

namespace {

struct Block {
  size_t i, j, len;
};

struct Layout {
  std::vector<Block> blocks;
  size_t total = 0;
};

bool layout_before(const Layout& a, const Layout& b) {
  if (a.total != b.total) return a.total > b.total;
  if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
  for (size_t k = 0; k < a.blocks.size(); ++k) {
    const auto& x = a.blocks[k];
    const auto& y = b.blocks[k];
    if (x.i != y.i) return x.i < y.i;
    if (x.j != y.j) return x.j < y.j;
    if (x.len != y.len) return x.len > y.len;
  }
  return false;
}

Pattern pattern_from_blocks(std::u32string_view w, const std::vector<Block>& blocks, bool first) {
  std::vector<std::u32string> lits;
  size_t pos = 0;
  for (const auto& b : blocks) {
    size_t start = first ? b.i : b.j;
    lits.emplace_back(w.substr(pos, start - pos));
    pos = start + b.len;
  }
  lits.emplace_back(w.substr(pos));
  return Pattern::from_literals(std::move(lits));
}

void extend_layouts(const std::vector<std::vector<size_t>>& run, size_t n1, size_t n2,
                    size_t max_slots, Layout& cur, std::vector<Layout>& out) {
  size_t i0 = 0, j0 = 0;
  if (!cur.blocks.empty()) {
    const auto& last = cur.blocks.back();
    i0 = last.i + last.len + 1;
    j0 = last.j + last.len + 1;
  }
  for (size_t i = i0; i < n1; ++i)
    for (size_t j = j0; j < n2; ++j)
      for (size_t len = 1; len <= run[i][j]; ++len) {
        cur.blocks.push_back({i, j, len});
        cur.total += len;
        out.push_back(cur);
        if (cur.blocks.size() < max_slots) extend_layouts(run, n1, n2, max_slots, cur, out);
        cur.total -= len;
        cur.blocks.pop_back();
      }
}

}  // namespace

PatternSets filter_by_generality(const PatternSets& candidates, size_t min_pattern_support) {
  CandidateSet none;
  auto r = filter_by_generality(none, candidates, min_pattern_support);
  return std::move(r.retained);
}

GeneralityResult filter_by_generality(const CandidateSet& pairs, const PatternSets& candidates,
                                      size_t min_pattern_support, size_t max_slots) {
  if (min_pattern_support == 0) throw InvariantError("min_pattern_support must be at least 1");
  GeneralityResult r;
  for (const auto& [key, set] : candidates)
    for (const auto& p : set) ++r.attribution[p];
  for (const auto& [key, set] : candidates) {
    std::set<PatternPair> kept;
    for (const auto& p : set)
      if (r.attribution[p] >= min_pattern_support) kept.insert(p);
    if (!kept.empty()) r.retained.emplace(key, std::move(kept));
  }
  for (const auto& c : pairs) {
    if (!c.always_retain) continue;
    auto key = c.key();
    if (r.retained.count(key)) continue;
    if (auto it = candidates.find(key); it != candidates.end() && !it->second.empty()) {
      r.retained.emplace(key, it->second);
      continue;
    }
    try {
      r.retained[key] = {minimal_alternation(c.lemma1, c.lemma2, max_slots)};
    } catch (const NoAlternation& e) {
      r.dropped.emplace_back(key, e.what());
    }
  }
  return r;
}

PatternPair minimal_alternation(std::string_view lemma1, std::string_view lemma2,
                                size_t max_slots) {
  if (lemma1 == lemma2) throw InvariantError("minimal alternation of identical lemmas");
  if (max_slots == 0) throw InvariantError("max_slots must be at least 1");
  const std::u32string a = text::to_u32(lemma1);
  const std::u32string b = text::to_u32(lemma2);
  // run[i][j]: length of the common run starting at a[i], b[j].
  std::vector<std::vector<size_t>> run(a.size() + 1, std::vector<size_t>(b.size() + 1, 0));
  for (size_t i = a.size(); i-- > 0;)
    for (size_t j = b.size(); j-- > 0;)
      if (a[i] == b[j]) run[i][j] = run[i + 1][j + 1] + 1;

  std::vector<Layout> layouts;
  Layout cur;
  extend_layouts(run, a.size(), b.size(), max_slots, cur, layouts);
  std::sort(layouts.begin(), layouts.end(), layout_before);
  for (const auto& l : layouts) {
    PatternPair pp{pattern_from_blocks(a, l.blocks, true), pattern_from_blocks(b, l.blocks, false)};
    if (pp.left.is_bare() && pp.right.is_bare()) continue;
    auto ca = apply_pattern(pp.left, a);
    auto cb = apply_pattern(pp.right, b);
    if (ca && cb && *ca == *cb) return pp;
  }
  throw NoAlternation("no shared material between '" + std::string(lemma1) + "' and '" +
                      std::string(lemma2) + "'");
}

std::vector<std::string> retained_lemmas(const PatternSets& retained) {
  std::set<std::string> s;
  for (const auto& [key, set] : retained) {
    s.insert(key.lemma1);
    s.insert(key.lemma2);
  }
  return {s.begin(), s.end()};
}

StatsMap compute_expression_stats(const std::vector<std::string>& lemmas,
                                  const std::set<Pattern>& patterns, size_t threads) {
  std::vector<std::u32string> words;
  for (const auto& l : lemmas) words.push_back(text::to_u32(l));
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::vector<std::u32string> reversed = words;
  for (auto& w : reversed) std::reverse(w.begin(), w.end());
  std::vector<size_t> by_suffix(words.size());
  for (size_t i = 0; i < by_suffix.size(); ++i) by_suffix[i] = i;
  std::sort(by_suffix.begin(), by_suffix.end(),
            [&](size_t x, size_t y) { return reversed[x] < reversed[y]; });
  std::vector<std::u32string> sorted_reversed;
  for (size_t i : by_suffix) sorted_reversed.push_back(reversed[i]);

  std::vector<Pattern> pats(patterns.begin(), patterns.end());
  std::vector<size_t> support(pats.size(), 0);
  detail::parallel_for(pats.size(), threads, [&](size_t k) {
    const Pattern& p = pats[k];
    const auto& pre = p.literals().front();
    const auto& suf = p.literals().back();
    size_t n = 0;
    auto count = [&](const std::u32string& w) {
      if (apply_pattern(p, w)) ++n;
    };
    if (!pre.empty() && pre.size() >= suf.size()) {
      auto lo = std::lower_bound(words.begin(), words.end(), pre);
      for (auto it = lo; it != words.end() && it->compare(0, pre.size(), pre) == 0; ++it) count(*it);
    } else if (!suf.empty()) {
      std::u32string key(suf.rbegin(), suf.rend());
      auto lo = std::lower_bound(sorted_reversed.begin(), sorted_reversed.end(), key);
      for (auto it = lo; it != sorted_reversed.end() && it->compare(0, key.size(), key) == 0; ++it)
        count(words[by_suffix[static_cast<size_t>(it - sorted_reversed.begin())]]);
    } else {
      for (const auto& w : words) count(w);
    }
    support[k] = n;
  });
  StatsMap out;
  for (size_t k = 0; k < pats.size(); ++k) out.emplace(pats[k], ExpressionStats{pats[k], support[k]});
  return out;
}

size_t pattern_score(const PatternPair& p, const StatsMap& stats) {
  size_t s = 0;
  if (auto it = stats.find(p.left); it != stats.end()) s += it->second.support;
  if (auto it = stats.find(p.right); it != stats.end()) s += it->second.support;
  return s;
}

bool fap_ranks_before(const PatternPair& a, size_t score_a, const PatternPair& b, size_t score_b) {
  if (score_a != score_b) return score_a > score_b;
  if (a.literal_length() != b.literal_length()) return a.literal_length() > b.literal_length();
  if (a.slots() != b.slots()) return a.slots() < b.slots();
  return std::forward_as_tuple(a.left.render(), a.right.render()) <
         std::forward_as_tuple(b.left.render(), b.right.render());
}

FapAnnotation select_fap(const CandidatePair& pair, const std::set<PatternPair>& surviving,
                         const StatsMap& stats) {
  if (surviving.empty())
    throw InvariantError("no pattern to select for " + pair.lemma1 + " / " + pair.lemma2);
  const PatternPair* best = nullptr;
  const PatternPair* second = nullptr;
  size_t best_score = 0, second_score = 0;
  for (const auto& p : surviving) {
    size_t s = pattern_score(p, stats);
    if (!best || fap_ranks_before(p, s, *best, best_score)) {
      second = best;
      second_score = best_score;
      best = &p;
      best_score = s;
    } else if (!second || fap_ranks_before(p, s, *second, second_score)) {
      second = &p;
      second_score = s;
    }
  }
  auto c1 = apply_pattern(best->left, text::to_u32(pair.lemma1));
  auto c2 = apply_pattern(best->right, text::to_u32(pair.lemma2));
  if (!c1 || !c2 || *c1 != *c2)
    throw InvariantError("pattern " + best->left.render() + " / " + best->right.render() +
                         " does not fit " + pair.lemma1 + " / " + pair.lemma2);
  FapAnnotation a;
  a.pair = pair;
  a.pattern = *best;
  a.stem = text::to_utf8(join_captures(*c1));
  a.score = best_score;
  if (second) {
    a.runner_up = *second;
    a.runner_up_score = second_score;
  }
  return a;
}

}  // namespace fapinette
