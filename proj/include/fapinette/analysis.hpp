#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fapinette/lexicon.hpp"

namespace fapinette {

inline constexpr const char* kPlaceholder = "<W>";

struct DefinitionTemplate {
  std::vector<std::string> tokens;
  PosTag cat1 = PosTag::N;
  PosTag cat2 = PosTag::N;

  std::string text() const;
  auto operator<=>(const DefinitionTemplate&) const = default;
  bool operator==(const DefinitionTemplate&) const = default;
};

/// The lemmatized definition with lemma1 replaced by the placeholder (every
/// occurrence, or only the first when replace_all is false).
DefinitionTemplate make_template(const DefEntry& d, bool replace_all = true);

struct RivalryOptions {
  size_t min_patterns = 2;
  size_t min_support_per_pattern = 1;
  bool replace_all = true;
};

/// Template → rival pattern pairs with the number of rows realizing each.
using RivalryReport = std::map<DefinitionTemplate, std::map<PatternPair, size_t>>;

RivalryReport rivalry(const std::vector<DefEntry>& defs, const RivalryOptions& opts = {});

struct OrientationCount {
  PatternPair pattern;
  PosTag cat1 = PosTag::N;
  PosTag cat2 = PosTag::N;
  size_t forward = 0;
  size_t backward = 0;
};

struct BackformationFlag {
  DefEntry row;
  OrientationCount count;
};

/// Rows whose pattern orientation is the minority one, optionally only when
/// lemma1 is longer than lemma2 in code points. Output follows defs order.
std::vector<BackformationFlag> detect_backformation(const std::vector<DefEntry>& defs,
                                                    bool require_longer_source = true);

struct MutualMotivation {
  /// Each mutual pair once, in its smaller orientation.
  std::vector<PairKey> pairs;
  /// Ordered defs rows; the ratio denominator.
  size_t defined_rows = 0;
  /// Distinct unordered pairs among defs rows.
  size_t defined_pair_sets = 0;

  size_t mutual_count() const { return pairs.size(); }
  double ratio() const { return defined_rows ? double(pairs.size()) / double(defined_rows) : 0.0; }
  double pair_set_ratio() const {
    return defined_pair_sets ? double(pairs.size()) / double(defined_pair_sets) : 0.0;
  }
};

MutualMotivation mutual_motivation(const std::vector<DefEntry>& defs);

struct Node {
  std::string lemma;
  PosTag pos = PosTag::N;
  auto operator<=>(const Node&) const = default;
  bool operator==(const Node&) const = default;
};

/// Directed graph over (lemma, POS) with one edge per defs row.
class DerivationGraph {
public:
  struct Edge {
    size_t to;
    PatternPair pattern;
  };

  static DerivationGraph from_defs(const std::vector<DefEntry>& defs);
  /// Unlabeled graph on nodes 0..n-1 (labels are bare/bare placeholders).
  static DerivationGraph from_edges(size_t n, const std::vector<std::pair<size_t, size_t>>& edges);

  size_t size() const { return nodes_.size(); }
  size_t edge_count() const { return edge_count_; }
  const Node& node(size_t i) const { return nodes_[i]; }
  std::optional<size_t> find(const Node& n) const;
  const std::vector<Edge>& out(size_t i) const { return out_[i]; }
  const std::vector<size_t>& in(size_t i) const { return in_[i]; }
  bool has_edge(size_t from, size_t to) const;
  /// Nodes within undirected distance two of i, including i, sorted.
  std::vector<size_t> family(size_t i) const;

private:
  void add_edge(size_t from, size_t to, PatternPair p);
  void finish();

  std::vector<Node> nodes_;
  std::map<Node, size_t> index_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<size_t>> in_;
  size_t edge_count_ = 0;
};

struct TriangleCensus {
  size_t transitive = 0;
  size_t cycles = 0;
  size_t two_edge_paths = 0;

  double transitive_ratio() const {
    return two_edge_paths ? double(transitive) / double(two_edge_paths) : 0.0;
  }
  double cycle_ratio() const { return two_edge_paths ? double(cycles) / double(two_edge_paths) : 0.0; }
  bool operator==(const TriangleCensus&) const = default;
};

/// Two-edge paths A→B→C with A≠C; transitive when A→C also exists; each
/// 3-cycle counted once.
TriangleCensus triangle_census(const DerivationGraph& g, size_t threads = 1);

struct StolonAlignment {
  size_t anchor_from = 0;
  size_t anchor_to = 0;
  /// (x, y) node pairs, sorted.
  std::vector<std::pair<size_t, size_t>> members;
};

/// Alignments between the families of the two ends of every edge labeled
/// with `anchor`. Alignments with identical member sets are reported once.
std::vector<StolonAlignment> find_stolons(const DerivationGraph& g, const PatternPair& anchor,
                                          size_t min_size = 4);

}  // namespace fapinette
