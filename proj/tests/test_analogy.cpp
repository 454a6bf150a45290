#include <doctest.h>

#include <algorithm>
#include <random>

#include "fapinette/analogy.hpp"
#include "fapinette/errors.hpp"
#include "fapinette/text.hpp"
#include "oracles.hpp"

using namespace fapinette;

namespace {

std::string random_word(std::mt19937& rng, size_t max_len, char last = 'e') {
  std::uniform_int_distribution<size_t> len(1, max_len);
  std::uniform_int_distribution<int> ch('a', last);
  std::string s(len(rng), 'a');
  for (auto& c : s) c = static_cast<char>(ch(rng));
  return s;
}

CandidatePair pair(const std::string& a, const std::string& b, bool mn = false) {
  CandidatePair c;
  c.lemma1 = a;
  c.cat1 = PosTag::N;
  c.lemma2 = b;
  c.cat2 = PosTag::N;
  c.provenance = mn ? Provenance::MorphyNet : Provenance::Definition;
  c.always_retain = mn;
  if (!mn) c.definition = Definition{a, {a}};
  return c;
}

std::set<std::pair<std::string, std::string>> rendered(const std::set<PatternPair>& s) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& p : s) out.emplace(p.left.render(), p.right.render());
  return out;
}

}  // namespace

TEST_CASE("edit distance matches the LCS oracle") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto a = random_word(rng, 9), b = random_word(rng, 9);
    CHECK(edit_distance(std::string_view(a), std::string_view(b)) == oracle::lev(a, b));
  }
  CHECK(edit_distance(std::string_view("kitten"), std::string_view("sitting")) == 5);
  CHECK(edit_distance(std::string_view("é"), std::string_view("e")) == 2);
  CHECK(edit_distance(std::string_view(""), std::string_view("abc")) == 3);
}

TEST_CASE("signature worked examples") {
  auto s = signature("spryness", "spry");
  CHECK(s.edit_distance == 4);
  CHECK(s.char_delta == std::map<char32_t, int>{{U'n', -1}, {U'e', -1}, {U's', -2}});
  auto p = signature("spryness", "property");
  CHECK(p.edit_distance == 10);
  CHECK(p.char_delta == std::map<char32_t, int>{{U'n', -1}, {U'o', 1}, {U'p', 1}, {U'r', 1}, {U's', -3}, {U't', 1}});
  auto id = signature("abc", "abc");
  CHECK(id.edit_distance == 0);
  CHECK(id.char_delta.empty());
  CHECK(to_string(s) == "4 e:-1 n:-1 s:-2");
}

TEST_CASE("signature invariants on random pairs") {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto a = random_word(rng, 8), b = random_word(rng, 8);
    auto s = signature(a, b);
    int pos = 0, neg = 0;
    for (auto [c, d] : s.char_delta) {
      CHECK(d != 0);
      if (d > 0) pos += d;
      else neg -= d;
    }
    CHECK(s.edit_distance >= static_cast<size_t>(pos));
    CHECK(s.edit_distance >= static_cast<size_t>(neg));
    CHECK(signature(a, a) == AnalogySignature{});
  }
}

TEST_CASE("signature works on code points") {
  auto s = signature("żółw", "żółwik");
  CHECK(s.edit_distance == 2);
  CHECK(s.char_delta == std::map<char32_t, int>{{U'i', 1}, {U'k', 1}});
  auto r = signature("кот", "котик");
  CHECK(r.edit_distance == 2);
}

TEST_CASE("is_analogy worked examples") {
  CHECK(is_analogy("abbc", "bbd", "aefc", "efd"));
  CHECK(is_analogy("abbc", "aefc", "bbd", "efd"));
  // Transposing the shared "ef" breaks every alignment.
  CHECK_FALSE(is_analogy("abbc", "bbd", "aefc", "fed"));
  CHECK_FALSE(oracle::analogy("abbc", "bbd", "aefc", "fed"));
  CHECK_FALSE(is_analogy("spryness", "spry", "abruptness", "property"));
  CHECK_FALSE(oracle::analogy("spryness", "spry", "abruptness", "property"));
  CHECK(is_analogy("positivist", "positivism", "feminist", "feminism"));
  CHECK(is_analogy("spry", "spryness", "abrupt", "abruptness"));
  CHECK_FALSE(is_analogy("ab", "ba", "a", "a"));
}

TEST_CASE("is_analogy length bound") {
  std::string longw(40, 'a');
  CHECK_THROWS_AS(is_analogy(longw, longw, longw, longw), AnalogyUndecided);
  CHECK(is_analogy(longw, longw, longw, longw, 64));
}

TEST_CASE("is_analogy agrees with the factorization oracle") {
  std::mt19937 rng(3);
  size_t positives = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string a, b, c, d;
    if (i % 2 == 0) {
      // Build a true proportion by swapping affixes around random stems.
      auto s1 = random_word(rng, 3, 'c'), s2 = random_word(rng, 3, 'c');
      auto x = random_word(rng, 2, 'c'), y = random_word(rng, 2, 'c');
      a = s1 + x;
      b = s1 + y;
      c = s2 + x;
      d = s2 + y;
    } else {
      a = random_word(rng, 5, 'c');
      b = random_word(rng, 5, 'c');
      c = random_word(rng, 5, 'c');
      d = random_word(rng, 5, 'c');
    }
    bool got = is_analogy(a, b, c, d);
    CHECK_MESSAGE(got == oracle::analogy(a, b, c, d), a << ":" << b << "::" << c << ":" << d);
    positives += got;
  }
  CHECK(positives > 1000);
}

TEST_CASE("analogy laws: reflexivity, symmetry, exchange of the means") {
  std::mt19937 rng(5);
  for (int i = 0; i < 3000; ++i) {
    auto a = random_word(rng, 6), b = random_word(rng, 6);
    CHECK(is_analogy(a, b, a, b));
    auto s1 = random_word(rng, 3), s2 = random_word(rng, 3), x = random_word(rng, 3);
    std::string c = random_word(rng, 6), d = random_word(rng, 6);
    if (i % 2) {
      a = s1 + x;
      b = x + s1;
      c = s2 + x;
      d = x + s2;
    }
    if (is_analogy(a, b, c, d)) {
      CHECK(is_analogy(c, d, a, b));
      CHECK(is_analogy(a, c, b, d));
      CHECK(signature(a, b) == signature(c, d));
    }
  }
}

TEST_CASE("pattern rendering and parsing") {
  auto p = Pattern::parse("^(.+)i(.+)ist$");
  CHECK(p.slots() == 2);
  CHECK(p.render() == "^(.+)i(.+)ist$");
  CHECK(p.literal_length() == 4);
  CHECK(Pattern::parse("^(.+)$").is_bare());
  CHECK(Pattern::parse("^super(.+)ical$").render() == "^super(.+)ical$");
  CHECK_THROWS_AS(Pattern::parse("(.+)ist$"), ParseError);
  CHECK_THROWS_AS(Pattern::parse("^(.+)(.+)$"), ParseError);
  CHECK_THROWS_AS(Pattern::parse("^abc$"), ParseError);
  CHECK(Pattern::parse("^dé(.+)$").render() == "^dé(.+)$");
}

TEST_CASE("apply_pattern examples") {
  CHECK(apply_pattern(Pattern::parse("^(.+)ist$"), std::string_view("positivist")) ==
        std::vector<std::string>{"positiv"});
  CHECK(apply_pattern(Pattern::parse("^(.+)$"), std::string_view("talento")) ==
        std::vector<std::string>{"talento"});
  CHECK_FALSE(apply_pattern(Pattern::parse("^(.+)so$"), std::string_view("duch")));
  CHECK_FALSE(apply_pattern(Pattern::parse("^(.+)ist$"), std::string_view("ist")));
  CHECK(apply_pattern(Pattern::parse("^(.+)i(.+)ist$"), std::string_view("positivist")) ==
        std::vector<std::string>{"posit", "v"});
  CHECK(apply_pattern(Pattern::parse("^(.+)s(.+)ist$"), std::string_view("catastrophist")) ==
        std::vector<std::string>{"cata", "troph"});
}

TEST_CASE("instantiate_pattern examples and errors") {
  CHECK(instantiate_pattern(Pattern::parse("^(.+)ism$"), std::vector<std::string>{"positiv"}) == "positivism");
  CHECK(instantiate_pattern(Pattern::parse("^super(.+)ical$"), std::vector<std::string>{"technolog"}) ==
        "supertechnological");
  CHECK(instantiate_pattern(Pattern::parse("^(.+)$"), std::vector<std::string>{"x"}) == "x");
  CHECK_THROWS_AS(instantiate_pattern(Pattern::parse("^(.+)a(.+)$"), std::vector<std::string>{"x"}),
                  InvariantError);
  CHECK_THROWS_AS(instantiate_pattern(Pattern::parse("^(.+)a$"), std::vector<std::string>{""}),
                  InvariantError);
}

TEST_CASE("apply_pattern agrees with std::regex greedy matching") {
  std::mt19937 rng(17);
  const char* pats[] = {"^(.+)$", "^(.+)a$", "^a(.+)$", "^(.+)b(.+)$", "^a(.+)b(.+)c$",
                        "^(.+)ab(.+)$", "^(.+)a(.+)a(.+)$", "^b(.+)$", "^(.+)ca$"};
  for (int i = 0; i < 4000; ++i) {
    std::string w = random_word(rng, 8, 'c');
    for (const char* r : pats) {
      auto got = apply_pattern(Pattern::parse(r), std::string_view(w));
      auto want = oracle::regex_apply(r, w);
      CHECK_MESSAGE(got == want, r << " on " << w);
    }
  }
}

TEST_CASE("instantiate inverts apply on 10^4 random matches") {
  std::mt19937 rng(23);
  size_t matched = 0;
  while (matched < 10000) {
    std::vector<std::u32string> lits;
    std::uniform_int_distribution<int> slots(1, 3);
    int n = slots(rng);
    for (int i = 0; i <= n; ++i) {
      bool edge = i == 0 || i == n;
      std::string l = random_word(rng, 2, 'c');
      if (edge && rng() % 2) l.clear();
      lits.push_back(text::to_u32(l));
    }
    Pattern p = Pattern::from_literals(lits);
    std::string w = random_word(rng, 10, 'c');
    if (auto caps = apply_pattern(p, std::string_view(w))) {
      CHECK(instantiate_pattern(p, *caps) == w);
      ++matched;
    }
  }
}

TEST_CASE("bucket_by_signature thresholds") {
  CandidateSet pairs;
  for (auto w : {"spry", "abrupt", "tight", "kind", "dark"}) pairs.push_back(pair(std::string(w) + "ness", w));
  pairs.push_back(pair("spryness", "property"));
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.key() < b.key(); });
  auto b5 = bucket_by_signature(pairs, {5, false, false});
  REQUIRE(b5.size() == 1);
  CHECK(b5.begin()->second.size() == 5);
  CHECK(b5.begin()->first == signature("spryness", "spry"));
  auto b1 = bucket_by_signature(pairs, {1, false, false});
  CHECK(b1.size() == 2);
  CHECK(b1.count(signature("spryness", "property")));
}

TEST_CASE("bucket_by_signature keeps MorphyNet members of small buckets") {
  CandidateSet pairs{pair("simplify", "simplification", true), pair("clarify", "clarification", false),
                     pair("purify", "purification", true)};
  auto b = bucket_by_signature(pairs, {5, false, false});
  REQUIRE(b.size() == 1);
  CHECK(b.begin()->second.size() == 2);
  for (const auto& c : b.begin()->second) CHECK(c.always_retain);
  auto counted = bucket_by_signature(pairs, {3, true, false});
  CHECK(counted.begin()->second.size() == 3);
}

TEST_CASE("bucket_by_signature is independent of input order") {
  CandidateSet pairs;
  for (auto w : {"spry", "abrupt", "tight", "kind", "dark", "bold"}) pairs.push_back(pair(std::string(w) + "ness", w));
  for (auto w : {"feminist", "activist", "nativist"}) pairs.push_back(pair(w, std::string(w).substr(0, std::string(w).size() - 1) + "m"));
  auto ref = bucket_by_signature(pairs, {2, false, false});
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    CHECK(bucket_by_signature(pairs, {2, false, false}) == ref);
  }
}

TEST_CASE("case folding is opt-in") {
  CandidateSet pairs{pair("Haus", "Häuser"), pair("haus", "häuser")};
  CHECK(bucket_by_signature(pairs, {1, false, false}).size() == 1);
  CandidateSet mixed{pair("Maus", "Mäuse"), pair("laus", "läuse")};
  CHECK(bucket_by_signature(mixed, {1, false, false}).size() == 1);
  CandidateSet cased{pair("Apfel", "apfel"), pair("Birne", "birne")};
  CHECK(bucket_by_signature(cased, {1, false, false}).size() == 2);
  CHECK(bucket_by_signature(cased, {1, false, true}).size() == 1);
}

TEST_CASE("enumerate_pattern_pairs reproduces the -ist/-ism examples") {
  CandidateSet fem{pair("feminist", "feminism"), pair("positivist", "positivism")};
  auto r = enumerate_pattern_pairs(fem);
  auto key = pair("positivist", "positivism").key();
  REQUIRE(r.count(key));
  auto got = rendered(r.at(key));
  CHECK(got.count({"^(.+)ist$", "^(.+)ism$"}));
  CHECK(got.count({"^(.+)i(.+)ist$", "^(.+)i(.+)ism$"}));

  CandidateSet act{pair("activist", "activism"), pair("positivist", "positivism")};
  auto got2 = rendered(enumerate_pattern_pairs(act).at(key));
  CHECK(got2.count({"^(.+)ivist$", "^(.+)ivism$"}));
  CHECK(got2.count({"^(.+)vist$", "^(.+)vism$"}));
  CHECK(got2.count({"^(.+)tivist$", "^(.+)tivism$"}));
  CHECK(got2.count({"^(.+)ist$", "^(.+)ism$"}));
}

TEST_CASE("enumerate_pattern_pairs edge cases") {
  CHECK(enumerate_pattern_pairs({pair("feminist", "feminism")}).empty());
  CandidateSet b{pair("ab", "ba"), pair("cd", "dc")};
  for (const auto& [k, set] : enumerate_pattern_pairs(b))
    for (const auto& p : set) CHECK_FALSE((p.left.is_bare() && p.right.is_bare()));
}

TEST_CASE("every enumerated pattern fits its pair with equal captures") {
  std::mt19937 rng(29);
  for (int round = 0; round < 30; ++round) {
    CandidateSet bucket;
    std::set<std::string> seen;
    auto x = random_word(rng, 2, 'd'), y = random_word(rng, 2, 'd');
    if (x == y) continue;
    for (int i = 0; i < 6; ++i) {
      auto stem = random_word(rng, 5, 'd');
      if (!seen.insert(stem).second) continue;
      bucket.push_back(pair(stem + x, stem + y));
    }
    std::sort(bucket.begin(), bucket.end(), [](auto& a, auto& b) { return a.key() < b.key(); });
    for (size_t threads : {1u, 3u}) {
      auto r = enumerate_pattern_pairs(bucket, {2, SIZE_MAX, threads});
      for (const auto& [k, set] : r)
        for (const auto& p : set) {
          auto c1 = apply_pattern(p.left, std::string_view(k.lemma1));
          auto c2 = apply_pattern(p.right, std::string_view(k.lemma2));
          REQUIRE(c1);
          REQUIRE(c2);
          CHECK(*c1 == *c2);
          CHECK(p.left.slots() == p.right.slots());
          CHECK(p.slots() <= 2);
        }
    }
  }
}

TEST_CASE("enumeration is deterministic across thread counts and respects max_partners") {
  CandidateSet bucket;
  for (auto w : {"activ", "femin", "nativ", "positiv", "structural", "catastroph", "collectiv"})
    bucket.push_back(pair(std::string(w) + "ist", std::string(w) + "ism"));
  std::sort(bucket.begin(), bucket.end(), [](auto& a, auto& b) { return a.key() < b.key(); });
  auto ref = enumerate_pattern_pairs(bucket, {2, SIZE_MAX, 1});
  CHECK(enumerate_pattern_pairs(bucket, {2, SIZE_MAX, 4}) == ref);
  auto limited = enumerate_pattern_pairs(bucket, {2, 1, 1});
  for (const auto& [k, set] : limited) {
    REQUIRE(ref.count(k));
    CHECK(std::includes(ref.at(k).begin(), ref.at(k).end(), set.begin(), set.end()));
  }
  auto one_slot = enumerate_pattern_pairs(bucket, {1, SIZE_MAX, 1});
  for (const auto& [k, set] : one_slot)
    for (const auto& p : set) CHECK(p.slots() == 1);
}
