#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "fapinette/analysis.hpp"
#include "fapinette/ingest.hpp"
#include "fapinette/lexicon.hpp"
#include "fapinette/pipeline.hpp"
#include "fapinette/text.hpp"

using namespace fapinette;
using ojson = nlohmann::ordered_json;

namespace {

size_t default_threads() {
  if (const char* env = std::getenv("FAPINETTE_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid FAPINETTE_THREADS=" << env << '\n';
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct TableFlags {
  std::string dir;
  bool lenient = false;
  bool headerless = false;
  std::string pairs_columns;
  std::string defs_columns;
  bool json = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("dir", dir, "Directory holding pairs.tsv and defs.tsv")->required();
    cmd->add_flag("--lenient", lenient, "Skip and report invalid rows instead of failing");
    cmd->add_flag("--headerless", headerless, "Tables have no header row");
    cmd->add_option("--pairs-columns", pairs_columns, "Comma-separated column order of headerless pairs.tsv");
    cmd->add_option("--defs-columns", defs_columns, "Comma-separated column order of headerless defs.tsv");
    cmd->add_flag("--json", json, "Print a JSON summary instead of TSV");
  }

  Tables load() const {
    ReadOptions o;
    o.strict = !lenient;
    o.header = !headerless;
    if (!pairs_columns.empty()) o.pairs_columns = split_list(pairs_columns);
    if (!defs_columns.empty()) o.defs_columns = split_list(defs_columns);
    auto r = read_tables(dir, o);
    for (const auto& i : r.issues) std::cerr << "skipped " << i.file << ':' << i.line << ": " << i.reason << '\n';
    for (const auto& i : r.table_issues) std::cerr << "table invariant: " << i << '\n';
    return std::move(r.tables);
  }
};

std::string node_fields(const Node& n) { return n.lemma + '\t' + to_string(n.pos); }

ojson pattern_json(const PatternPair& p) {
  return ojson{{"exponent1", p.left.render()}, {"exponent2", p.right.render()}};
}

int cmd_build(const BuildConfig& cfg, const std::string& stats_json_path, bool quiet) {
  auto r = run_build(cfg);
  auto stats = compute_stats(r.tables);
  {
    std::ofstream out(cfg.output_dir / "stats.txt", std::ios::binary);
    out << format_stats(stats);
    std::ofstream js(cfg.output_dir / "stats.json", std::ios::binary);
    js << stats_json(stats) << '\n';
    if (!out || !js) throw IoError("cannot write stats to " + cfg.output_dir.string());
  }
  if (!stats_json_path.empty()) {
    std::ofstream js(stats_json_path, std::ios::binary);
    js << stats_json(stats) << '\n';
    if (!js) throw IoError("cannot write " + stats_json_path);
  }
  if (!quiet) std::cout << format_summary(r.summary) << "stats\n" << format_stats(stats);
  return 0;
}

int cmd_stats(const TableFlags& f) {
  auto s = compute_stats(f.load());
  std::cout << (f.json ? stats_json(s) + "\n" : format_stats(s));
  return 0;
}

int cmd_rivalry(const TableFlags& f, const RivalryOptions& opts) {
  auto report = rivalry(f.load().defs, opts);
  if (f.json) {
    ojson arr = ojson::array();
    for (const auto& [t, pats] : report) {
      ojson rivals = ojson::array();
      for (const auto& [p, n] : pats) {
        auto j = pattern_json(p);
        j["rows"] = n;
        rivals.push_back(j);
      }
      arr.push_back({{"template", t.text()}, {"cat1", to_string(t.cat1)}, {"cat2", to_string(t.cat2)},
                     {"rivals", rivals}});
    }
    std::cout << ojson{{"templates", report.size()}, {"report", arr}}.dump(2) << '\n';
    return 0;
  }
  std::cout << "template\tcat1\tcat2\texponent1\texponent2\trows\n";
  for (const auto& [t, pats] : report)
    for (const auto& [p, n] : pats)
      std::cout << t.text() << '\t' << to_char(t.cat1) << '\t' << to_char(t.cat2) << '\t'
                << p.left.render() << '\t' << p.right.render() << '\t' << n << '\n';
  return 0;
}

int cmd_backform(const TableFlags& f, bool no_length_filter) {
  auto flags = detect_backformation(f.load().defs, !no_length_filter);
  if (f.json) {
    ojson arr = ojson::array();
    for (const auto& b : flags) {
      const auto& e = b.row.entry;
      auto j = pattern_json(b.count.pattern);
      arr.push_back({{"lemma1", e.lemma1}, {"cat1", to_string(e.cat1)}, {"lemma2", e.lemma2},
                     {"cat2", to_string(e.cat2)}, {"exponent1", j["exponent1"]},
                     {"exponent2", j["exponent2"]}, {"forward", b.count.forward},
                     {"backward", b.count.backward}});
    }
    std::cout << ojson{{"flagged", flags.size()}, {"rows", arr}}.dump(2) << '\n';
    return 0;
  }
  std::cout << "lemma1\tcat1\tlemma2\tcat2\texponent1\texponent2\tforward\tbackward\n";
  for (const auto& b : flags) {
    const auto& e = b.row.entry;
    std::cout << e.lemma1 << '\t' << to_char(e.cat1) << '\t' << e.lemma2 << '\t' << to_char(e.cat2)
              << '\t' << e.exponent1.render() << '\t' << e.exponent2.render() << '\t'
              << b.count.forward << '\t' << b.count.backward << '\n';
  }
  return 0;
}

int cmd_symmetry(const TableFlags& f) {
  auto m = mutual_motivation(f.load().defs);
  if (f.json) {
    ojson pairs = ojson::array();
    for (const auto& k : m.pairs)
      pairs.push_back({{"lemma1", k.lemma1}, {"cat1", to_string(k.cat1)}, {"lemma2", k.lemma2},
                       {"cat2", to_string(k.cat2)}});
    std::cout << ojson{{"mutual_pairs", m.mutual_count()},
                       {"defined_rows", m.defined_rows},
                       {"defined_pair_sets", m.defined_pair_sets},
                       {"ratio", std::stod(format_ratio(m.ratio()))},
                       {"pair_set_ratio", std::stod(format_ratio(m.pair_set_ratio()))},
                       {"pairs", pairs}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << "lemma1\tcat1\tlemma2\tcat2\n";
  for (const auto& k : m.pairs)
    std::cout << k.lemma1 << '\t' << to_char(k.cat1) << '\t' << k.lemma2 << '\t' << to_char(k.cat2) << '\n';
  std::cout << "# mutual_pairs\t" << m.mutual_count() << "\n# defined_rows\t" << m.defined_rows
            << "\n# defined_pair_sets\t" << m.defined_pair_sets << "\n# ratio\t" << format_ratio(m.ratio())
            << "\n# pair_set_ratio\t" << format_ratio(m.pair_set_ratio()) << '\n';
  return 0;
}

int cmd_triangles(const TableFlags& f, size_t threads) {
  auto g = DerivationGraph::from_defs(f.load().defs);
  auto c = triangle_census(g, threads);
  if (f.json) {
    std::cout << ojson{{"transitive", c.transitive},
                       {"cycles", c.cycles},
                       {"two_edge_paths", c.two_edge_paths},
                       {"transitive_ratio", std::stod(format_ratio(c.transitive_ratio()))},
                       {"cycle_ratio", std::stod(format_ratio(c.cycle_ratio()))}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << "transitive\tcycles\ttwo_edge_paths\ttransitive_ratio\tcycle_ratio\n"
            << c.transitive << '\t' << c.cycles << '\t' << c.two_edge_paths << '\t'
            << format_ratio(c.transitive_ratio()) << '\t' << format_ratio(c.cycle_ratio()) << '\n';
  return 0;
}

int cmd_stolons(const TableFlags& f, const std::string& left, const std::string& right, size_t min_size) {
  PatternPair anchor{Pattern::parse(left), Pattern::parse(right)};
  auto g = DerivationGraph::from_defs(f.load().defs);
  auto found = find_stolons(g, anchor, min_size);
  if (f.json) {
    ojson arr = ojson::array();
    for (const auto& a : found) {
      ojson members = ojson::array();
      for (auto [x, y] : a.members)
        members.push_back({{"x", g.node(x).lemma}, {"cat_x", to_string(g.node(x).pos)},
                           {"y", g.node(y).lemma}, {"cat_y", to_string(g.node(y).pos)}});
      arr.push_back({{"anchor_from", g.node(a.anchor_from).lemma},
                     {"anchor_to", g.node(a.anchor_to).lemma},
                     {"size", a.members.size()},
                     {"members", members}});
    }
    std::cout << ojson{{"alignments", found.size()}, {"stolons", arr}}.dump(2) << '\n';
    return 0;
  }
  std::cout << "alignment\tlemma_x\tcat_x\tlemma_y\tcat_y\n";
  for (size_t i = 0; i < found.size(); ++i)
    for (auto [x, y] : found[i].members)
      std::cout << i + 1 << '\t' << node_fields(g.node(x)) << '\t' << node_fields(g.node(y)) << '\n';
  return 0;
}

int cmd_convert(const std::string& input, const std::string& output, const std::string& pos_map_path,
                bool lemmatize, const std::string& skip_report) {
  PosMap pm = PosMap::defaults();
  if (!pos_map_path.empty()) {
    std::stringstream ss;
    ss << open_input(pos_map_path)->rdbuf();
    pm = PosMap::parse(ss.str());
  }
  auto in = open_input(input);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty() && output != "-") {
    file.open(output, std::ios::binary);
    if (!file) throw IoError("cannot write " + output);
    out = &file;
  }
  SkipReport skips;
  KaikkiReader reader(*in, skips, pm);
  size_t n = 0;
  while (auto r = reader.next()) {
    if (lemmatize)
      for (auto& g : r->glosses)
        if (!g.lemmatized) {
          auto toks = default_lemmatize(g.raw);
          if (!toks.empty()) g.lemmatized = std::move(toks);
        }
    *out << emit_normalized(*r) << '\n';
    ++n;
  }
  if (!skip_report.empty()) {
    std::ofstream rep(skip_report, std::ios::binary);
    skips.write_tsv(rep);
    if (!rep) throw IoError("cannot write " + skip_report);
  }
  std::cerr << "converted " << n << " records, skipped " << skips.size() << " lines\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivational lexicon induction from dictionary dumps"};
  app.require_subcommand(1);
  // Config keys live under a [build] section; unknown keys are rejected.
  app.set_config("--config", "", "TOML file; keys under [build] set build options, flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();

  // build
  BuildConfig cfg;
  cfg.threads = default_threads();
  std::vector<std::string> kaikki, morphynet, normalized;
  std::string stop_list, pos_map, skip_report, diagnostics, stats_json_path, max_partners;
  bool no_stop_list = false, quiet = false;
  std::string output = "out";
  auto* build = app.add_subcommand("build", "Induce pairs.tsv and defs.tsv from dumps");
  build->add_option("--kaikki", kaikki, "Kaikki JSONL dump(s)");
  build->add_option("--morphynet", morphynet, "MorphyNet TSV file(s)");
  build->add_option("--normalized", normalized, "Normalized JSONL file(s)");
  build->add_option("-o,--output", output, "Output directory")->capture_default_str();
  build->add_option("--language", cfg.language, "Language tag (selects the built-in stop list)")->capture_default_str();
  build->add_option("--min-bucket", cfg.min_bucket, "Minimum pairs per signature")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--min-pattern-support", cfg.min_pattern_support, "Minimum pairs per pattern pair")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--max-slots", cfg.max_slots, "Maximum wildcard slots per pattern")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--max-partners", max_partners, "Partners examined per pair (default unlimited)");
  build->add_flag("--count-morphynet-in-buckets", cfg.count_morphynet_in_buckets, "Let MorphyNet pairs count toward min-bucket");
  build->add_flag("--case-fold", cfg.case_fold, "Lowercase lemmas before computing signatures");
  build->add_option("--stop-list", stop_list, "Function-word file replacing the built-in list");
  build->add_flag("--no-stop-list", no_stop_list, "Match every definition token");
  build->add_option("--pos-map", pos_map, "label=TAG mapping file for dump POS labels");
  build->add_option("--skip-report", skip_report, "Skip report path (default OUTPUT/skips.tsv)");
  build->add_option("--diagnostics", diagnostics, "Write candidates, patterns and FAP audit TSVs here");
  build->add_option("--stats-json", stats_json_path, "Also write build stats JSON to this path");
  build->add_option("-j,--threads", cfg.threads, "Worker threads (env FAPINETTE_THREADS)")->check(CLI::PositiveNumber);
  build->add_flag("-q,--quiet", quiet, "Do not print the stage summary");

  TableFlags stats_f, riv_f, back_f, sym_f, tri_f, sto_f;
  auto* stats = app.add_subcommand("stats", "Table sizes and definition ratios");
  stats_f.attach(stats);

  RivalryOptions riv_opts;
  bool first_only = false;
  auto* riv = app.add_subcommand("rivalry", "Definition templates realized by rival patterns");
  riv_f.attach(riv);
  riv->add_option("--min-patterns", riv_opts.min_patterns, "Rival patterns required per template")->capture_default_str()->check(CLI::PositiveNumber);
  riv->add_option("--min-support", riv_opts.min_support_per_pattern, "Rows required per rival pattern")->capture_default_str()->check(CLI::PositiveNumber);
  riv->add_flag("--first-only", first_only, "Replace only the first occurrence of lemma1");

  bool no_length_filter = false;
  auto* back = app.add_subcommand("backform", "Rows oriented against their pattern's majority");
  back_f.attach(back);
  back->add_flag("--no-length-filter", no_length_filter, "Do not require lemma1 to be longer than lemma2");

  auto* sym = app.add_subcommand("symmetry", "Mutually motivated pairs");
  sym_f.attach(sym);

  size_t tri_threads = default_threads();
  auto* tri = app.add_subcommand("triangles", "Transitive triangles and 3-cycles");
  tri_f.attach(tri);
  tri->add_option("-j,--threads", tri_threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string anchor_left, anchor_right;
  size_t min_size = 4;
  auto* sto = app.add_subcommand("stolons", "Aligned families sharing an anchor pattern");
  sto_f.attach(sto);
  sto->add_option("--anchor-left", anchor_left, "Left exponent of the anchor, e.g. ^(.+)$")->required();
  sto->add_option("--anchor-right", anchor_right, "Right exponent of the anchor, e.g. ^des(.+)$")->required();
  sto->add_option("--min-size", min_size, "Minimum member pairs per alignment")->capture_default_str();

  std::string conv_in, conv_out, conv_pos_map, conv_skips;
  bool conv_lemmatize = false;
  auto* conv = app.add_subcommand("convert", "Convert a Kaikki dump to normalized JSONL");
  conv->add_option("input", conv_in, "Kaikki JSONL file")->required();
  conv->add_option("-o,--output", conv_out, "Output file (default stdout)");
  conv->add_option("--pos-map", conv_pos_map, "label=TAG mapping file");
  conv->add_flag("--lemmatize", conv_lemmatize, "Fill missing lemmatized glosses with the fallback tokenizer");
  conv->add_option("--skip-report", conv_skips, "Write skipped lines as line<TAB>reason");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      for (const auto& p : kaikki) cfg.inputs.push_back({InputType::Kaikki, p});
      for (const auto& p : morphynet) cfg.inputs.push_back({InputType::MorphyNet, p});
      for (const auto& p : normalized) cfg.inputs.push_back({InputType::Normalized, p});
      cfg.output_dir = output;
      if (!max_partners.empty() && max_partners != "unlimited") cfg.max_partners = std::stoul(max_partners);
      cfg.use_stop_list = !no_stop_list;
      if (!stop_list.empty()) cfg.stop_list = stop_list;
      if (!pos_map.empty()) cfg.pos_map = pos_map;
      if (!skip_report.empty()) cfg.skip_report = skip_report;
      if (!diagnostics.empty()) cfg.diagnostics_dir = diagnostics;
      return cmd_build(cfg, stats_json_path, quiet);
    }
    if (*stats) return cmd_stats(stats_f);
    if (*riv) {
      riv_opts.replace_all = !first_only;
      return cmd_rivalry(riv_f, riv_opts);
    }
    if (*back) return cmd_backform(back_f, no_length_filter);
    if (*sym) return cmd_symmetry(sym_f);
    if (*tri) return cmd_triangles(tri_f, tri_threads);
    if (*sto) return cmd_stolons(sto_f, anchor_left, anchor_right, min_size);
    if (*conv) return cmd_convert(conv_in, conv_out, conv_pos_map, conv_lemmatize, conv_skips);
  } catch (const StageError& e) {
    std::cerr << "error in stage " << e.stage() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
