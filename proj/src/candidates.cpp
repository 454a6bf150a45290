#include "fapinette/candidates.hpp"

#include <algorithm>

#include "fapinette/text.hpp"

namespace fapinette {

namespace {

const char* const kEnglish[] = {
    "a", "an", "the", "of", "to", "in", "on", "at", "by", "for", "with", "from", "as",
    "or", "and", "but", "nor", "not", "be", "is", "are", "was", "were", "been", "being",
    "have", "has", "had", "do", "does", "did", "that", "this", "these", "those", "which",
    "who", "whom", "whose", "it", "its", "one", "someone", "something", "any", "some",
    "such", "into", "than", "so", "very", "more", "most"};
const char* const kFrench[] = {
    "le", "la", "les", "un", "une", "des", "de", "du", "à", "au", "aux", "en", "et", "ou",
    "par", "pour", "sur", "dans", "avec", "qui", "que", "quoi", "dont", "être", "avoir",
    "faire", "se", "ne", "pas", "ce", "cette", "ces", "son", "sa", "ses", "il", "elle"};
const char* const kSpanish[] = {
    "el", "la", "los", "las", "un", "una", "unos", "unas", "de", "del", "al", "a", "en",
    "y", "o", "por", "para", "con", "que", "quien", "ser", "estar", "haber", "hacer",
    "se", "no", "lo", "su", "sus", "este", "esta"};
const char* const kGerman[] = {
    "der", "die", "das", "den", "dem", "des", "ein", "eine", "einer", "eines", "einem",
    "einen", "und", "oder", "von", "zu", "mit", "in", "an", "auf", "für", "sein", "haben",
    "werden", "sich", "nicht", "als", "wie", "etwas", "jemand"};

template <size_t N>
void add_all(std::unordered_set<std::string>& s, const char* const (&words)[N]) {
  for (const char* w : words) s.insert(w);
}

/// Sorts by key and keeps the first element of each key run, so the input
/// order decides which duplicate survives.
CandidateSet sort_unique(CandidateSet v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const CandidatePair& a, const CandidatePair& b) { return a.key() < b.key(); });
  auto last = std::unique(v.begin(), v.end(), [](const CandidatePair& a, const CandidatePair& b) {
    return a.key() == b.key();
  });
  v.erase(last, v.end());
  return v;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Definition: return "definition";
    case Provenance::MorphSection: return "morph-section";
    case Provenance::MorphyNet: return "morphynet";
  }
  return "?";
}

LexiconIndex LexiconIndex::build(const std::vector<DictionaryRecord>& records) {
  LexiconIndex idx;
  for (const auto& r : records) idx.add(r.lemma, r.pos);
  return idx;
}

void LexiconIndex::add(const std::string& lemma, PosTag pos) {
  auto [it, inserted] = tags_.try_emplace(lemma);
  it->second.insert(pos);
  if (inserted) {
    auto& bucket = by_lower_[text::lowercase(lemma)];
    bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), lemma), lemma);
  }
}

const std::set<PosTag>* LexiconIndex::find(const std::string& lemma) const {
  auto it = tags_.find(lemma);
  return it == tags_.end() ? nullptr : &it->second;
}

std::vector<std::string> LexiconIndex::resolve_token(const std::string& token) const {
  if (tags_.count(token)) return {token};
  auto it = by_lower_.find(text::lowercase(token));
  if (it == by_lower_.end()) return {};
  return it->second;
}

StopList StopList::none() { return StopList{}; }

StopList StopList::builtin(const std::string& lang) {
  StopList s;
  s.enabled_ = true;
  if (lang == "en") add_all(s.words_, kEnglish);
  else if (lang == "fr") add_all(s.words_, kFrench);
  else if (lang == "es") add_all(s.words_, kSpanish);
  else if (lang == "de") add_all(s.words_, kGerman);
  return s;
}

StopList StopList::from_stream(std::istream& in) {
  StopList s;
  s.enabled_ = true;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t");
    s.words_.insert(text::lowercase(text::nfc(line.substr(b, e - b + 1))));
  }
  return s;
}

bool StopList::contains(const std::string& token) const {
  if (!enabled_) return false;
  if (text::length(token) <= 1) return true;
  return words_.count(text::lowercase(token)) > 0;
}

CandidateSet pairs_from_definitions(const std::vector<DictionaryRecord>& records,
                                    const LexiconIndex& index, const StopList& stop) {
  CandidateSet out;
  for (const auto& r : records) {
    for (const auto& g : r.glosses) {
      std::vector<std::string> tokens = g.lemmatized ? *g.lemmatized : default_lemmatize(g.raw);
      for (const auto& t : tokens) {
        if (stop.contains(t)) continue;
        if (t.find_first_of(" \t\n") != std::string::npos) continue;
        for (const auto& lemma : index.resolve_token(t)) {
          if (lemma == r.lemma) continue;
          for (PosTag p : *index.find(lemma)) {
            CandidatePair c;
            c.lemma1 = lemma;
            c.cat1 = p;
            c.lemma2 = r.lemma;
            c.cat2 = r.pos;
            c.provenance = Provenance::Definition;
            c.definition = Definition{g.raw, tokens};
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  return sort_unique(std::move(out));
}

CandidateSet pairs_from_morph_sections(const std::vector<DictionaryRecord>& records,
                                       const LexiconIndex& index) {
  CandidateSet out;
  for (const auto& r : records) {
    for (const auto* list : {&r.derived, &r.related}) {
      for (const auto& m : *list) {
        if (m == r.lemma) continue;
        const auto* tags = index.find(m);
        if (!tags) continue;
        for (PosTag p : *tags) {
          CandidatePair c;
          c.lemma1 = r.lemma;
          c.cat1 = r.pos;
          c.lemma2 = m;
          c.cat2 = p;
          c.provenance = Provenance::MorphSection;
          out.push_back(std::move(c));
        }
      }
    }
  }
  return sort_unique(std::move(out));
}

CandidateSet pairs_from_morphynet(const std::vector<MorphyNetRow>& rows) {
  CandidateSet out;
  for (const auto& row : rows) {
    if (row.source_lemma == row.target_lemma) continue;
    CandidatePair fwd;
    fwd.lemma1 = row.source_lemma;
    fwd.cat1 = row.source_pos;
    fwd.lemma2 = row.target_lemma;
    fwd.cat2 = row.target_pos;
    fwd.provenance = Provenance::MorphyNet;
    fwd.always_retain = true;
    CandidatePair bwd = fwd;
    std::swap(bwd.lemma1, bwd.lemma2);
    std::swap(bwd.cat1, bwd.cat2);
    out.push_back(std::move(fwd));
    out.push_back(std::move(bwd));
  }
  return sort_unique(std::move(out));
}

CandidateSet merge_candidates(const CandidateSet& definitions, const CandidateSet& sections,
                              const CandidateSet& morphynet) {
  CandidateSet all;
  all.reserve(definitions.size() + sections.size() + morphynet.size());
  all.insert(all.end(), definitions.begin(), definitions.end());
  all.insert(all.end(), sections.begin(), sections.end());
  all.insert(all.end(), morphynet.begin(), morphynet.end());
  std::stable_sort(all.begin(), all.end(), [](const CandidatePair& a, const CandidatePair& b) {
    return a.key() < b.key();
  });
  CandidateSet out;
  for (auto& c : all) {
    if (!out.empty() && out.back().key() == c.key()) {
      out.back().always_retain = out.back().always_retain || c.always_retain;
      continue;
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_candidates_tsv(std::ostream& out, const CandidateSet& pairs) {
  out << "lemma1\tcat1\tlemma2\tcat2\tprovenance\n";
  for (const auto& c : pairs)
    out << c.lemma1 << '\t' << to_char(c.cat1) << '\t' << c.lemma2 << '\t' << to_char(c.cat2)
        << '\t' << to_string(c.provenance) << '\n';
}

}  // namespace fapinette
