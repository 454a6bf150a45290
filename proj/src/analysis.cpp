#include "fapinette/analysis.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "fapinette/errors.hpp"
#include "fapinette/text.hpp"
#include "parallel.hpp"

namespace fapinette {

std::string DefinitionTemplate::text() const { return text::join(tokens, " "); }

DefinitionTemplate make_template(const DefEntry& d, bool replace_all) {
  DefinitionTemplate t{d.lemmatized_definition2, d.entry.cat1, d.entry.cat2};
  bool replaced = false;
  for (auto& tok : t.tokens) {
    if (replaced && !replace_all) break;
    if (text::same_word(tok, d.entry.lemma1)) {
      tok = kPlaceholder;
      replaced = true;
    }
  }
  if (!replaced) throw InvariantError("lemma1 '" + d.entry.lemma1 + "' absent from its definition");
  return t;
}

RivalryReport rivalry(const std::vector<DefEntry>& defs, const RivalryOptions& opts) {
  RivalryReport all;
  for (const auto& d : defs) ++all[make_template(d, opts.replace_all)][d.entry.pattern()];
  RivalryReport out;
  for (auto& [tmpl, patterns] : all) {
    std::erase_if(patterns, [&](const auto& kv) { return kv.second < opts.min_support_per_pattern; });
    if (patterns.size() >= opts.min_patterns) out.emplace(tmpl, std::move(patterns));
  }
  return out;
}

std::vector<BackformationFlag> detect_backformation(const std::vector<DefEntry>& defs,
                                                    bool require_longer_source) {
  using Key = std::tuple<PatternPair, PosTag, PosTag>;
  std::map<Key, size_t> counts;
  for (const auto& d : defs) ++counts[{d.entry.pattern(), d.entry.cat1, d.entry.cat2}];
  auto count_of = [&](const Key& k) {
    auto it = counts.find(k);
    return it == counts.end() ? size_t{0} : it->second;
  };
  std::vector<BackformationFlag> out;
  for (const auto& d : defs) {
    const auto& e = d.entry;
    OrientationCount oc{e.pattern(), e.cat1, e.cat2, 0, 0};
    oc.forward = count_of({e.pattern(), e.cat1, e.cat2});
    oc.backward = count_of({PatternPair{e.exponent2, e.exponent1}, e.cat2, e.cat1});
    if (oc.forward >= oc.backward) continue;
    if (require_longer_source && text::length(e.lemma1) <= text::length(e.lemma2)) continue;
    out.push_back({d, std::move(oc)});
  }
  return out;
}

MutualMotivation mutual_motivation(const std::vector<DefEntry>& defs) {
  MutualMotivation m;
  std::set<PairKey> keys;
  for (const auto& d : defs) keys.insert(d.key());
  std::set<PairKey> sets;
  for (const auto& k : keys) {
    sets.insert(std::min(k, k.reversed()));
    if (k < k.reversed() && keys.count(k.reversed())) m.pairs.push_back(k);
  }
  m.defined_rows = defs.size();
  m.defined_pair_sets = sets.size();
  return m;
}

DerivationGraph DerivationGraph::from_defs(const std::vector<DefEntry>& defs) {
  DerivationGraph g;
  std::set<Node> nodes;
  for (const auto& d : defs) {
    nodes.insert({d.entry.lemma1, d.entry.cat1});
    nodes.insert({d.entry.lemma2, d.entry.cat2});
  }
  for (const auto& n : nodes) {
    g.index_.emplace(n, g.nodes_.size());
    g.nodes_.push_back(n);
  }
  g.out_.resize(g.nodes_.size());
  g.in_.resize(g.nodes_.size());
  for (const auto& d : defs)
    g.add_edge(g.index_.at({d.entry.lemma1, d.entry.cat1}), g.index_.at({d.entry.lemma2, d.entry.cat2}),
               d.entry.pattern());
  g.finish();
  return g;
}

DerivationGraph DerivationGraph::from_edges(size_t n, const std::vector<std::pair<size_t, size_t>>& edges) {
  DerivationGraph g;
  for (size_t i = 0; i < n; ++i) {
    Node node{std::to_string(i), PosTag::N};
    g.index_.emplace(node, i);
    g.nodes_.push_back(std::move(node));
  }
  g.out_.resize(n);
  g.in_.resize(n);
  std::set<std::pair<size_t, size_t>> seen;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InvariantError("edge endpoint out of range");
    if (!seen.insert({u, v}).second) continue;
    g.add_edge(u, v, PatternPair{});
  }
  g.finish();
  return g;
}

void DerivationGraph::add_edge(size_t from, size_t to, PatternPair p) {
  if (from == to) throw InvariantError("self-loop on " + nodes_[from].lemma);
  out_[from].push_back({to, std::move(p)});
  in_[to].push_back(from);
  ++edge_count_;
}

void DerivationGraph::finish() {
  for (auto& o : out_) std::sort(o.begin(), o.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
  for (auto& i : in_) std::sort(i.begin(), i.end());
}

std::optional<size_t> DerivationGraph::find(const Node& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool DerivationGraph::has_edge(size_t from, size_t to) const {
  const auto& o = out_[from];
  auto it = std::lower_bound(o.begin(), o.end(), to, [](const Edge& e, size_t t) { return e.to < t; });
  return it != o.end() && it->to == to;
}

std::vector<size_t> DerivationGraph::family(size_t i) const {
  auto neighbours = [&](size_t n) {
    std::vector<size_t> v(in_[n]);
    for (const auto& e : out_[n]) v.push_back(e.to);
    return v;
  };
  std::set<size_t> fam{i};
  for (size_t a : neighbours(i)) {
    fam.insert(a);
    for (size_t b : neighbours(a)) fam.insert(b);
  }
  return {fam.begin(), fam.end()};
}

TriangleCensus triangle_census(const DerivationGraph& g, size_t threads) {
  std::vector<TriangleCensus> per(g.size());
  detail::parallel_for(g.size(), threads, [&](size_t b) {
    TriangleCensus& c = per[b];
    for (size_t a : g.in(b))
      for (const auto& e : g.out(b)) {
        size_t cc = e.to;
        if (a == cc) continue;
        ++c.two_edge_paths;
        if (g.has_edge(a, cc)) ++c.transitive;
        if (g.has_edge(cc, a)) ++c.cycles;
      }
  });
  TriangleCensus total;
  for (const auto& c : per) {
    total.two_edge_paths += c.two_edge_paths;
    total.transitive += c.transitive;
    total.cycles += c.cycles;
  }
  // Every 3-cycle was seen once from each of its three middle nodes.
  total.cycles /= 3;
  return total;
}

std::vector<StolonAlignment> find_stolons(const DerivationGraph& g, const PatternPair& anchor,
                                          size_t min_size) {
  if (min_size < 2) throw InvariantError("stolon min_size must be at least 2");
  std::vector<StolonAlignment> out;
  std::set<std::vector<std::pair<size_t, size_t>>> seen;
  for (size_t from = 0; from < g.size(); ++from) {
    for (const auto& e : g.out(from)) {
      if (!(e.pattern == anchor)) continue;
      auto fx = g.family(from);
      auto fy = g.family(e.to);
      std::vector<std::pair<size_t, size_t>> members;
      for (size_t x : fx) {
        auto cx = apply_pattern(anchor.left, text::to_u32(g.node(x).lemma));
        if (!cx) continue;
        auto image = instantiate_pattern(anchor.right, *cx);
        for (size_t y : fy) {
          if (x == y) continue;
          auto wy = text::to_u32(g.node(y).lemma);
          auto cy = apply_pattern(anchor.right, wy);
          if ((cy && *cy == *cx) || wy == image) members.emplace_back(x, y);
        }
      }
      if (members.size() < min_size) continue;
      if (!seen.insert(members).second) continue;
      out.push_back({from, e.to, std::move(members)});
    }
  }
  return out;
}

}  // namespace fapinette
