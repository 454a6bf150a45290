#include "fapinette/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fapinette/text.hpp"
#include "parallel.hpp"

namespace fapinette {

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string to_string(InputType t) {
  switch (t) {
    case InputType::Kaikki: return "kaikki";
    case InputType::MorphyNet: return "morphynet";
    case InputType::Normalized: return "normalized";
  }
  return "?";
}

void BuildConfig::validate() const {
  if (inputs.empty()) throw InvariantError("at least one input is required");
  if (min_bucket < 1) throw InvariantError("min_bucket must be at least 1");
  if (min_pattern_support < 1) throw InvariantError("min_pattern_support must be at least 1");
  if (max_slots < 1) throw InvariantError("max_slots must be at least 1");
  if (max_partners < 1) throw InvariantError("max_partners must be at least 1");
  if (threads < 1) throw InvariantError("threads must be at least 1");
}

std::string format_summary(const StageSummary& s) {
  std::ostringstream out;
  auto line = [&](const std::string& name, size_t v) {
    out << "  " << name << std::string(name.size() < 34 ? 34 - name.size() : 1, ' ') << v << '\n';
  };
  out << "ingest\n";
  line("records", s.records);
  line("morphynet rows", s.morphynet_rows);
  line("skipped lines", s.skipped_lines);
  out << "candidates\n";
  line("definition", s.definition_candidates);
  line("morph-section", s.section_candidates);
  line("morphynet", s.morphynet_candidates);
  line("merged", s.merged_candidates);
  out << "signature filter\n";
  line("signatures", s.signatures);
  line("buckets kept", s.buckets_kept);
  line("buckets dropped", s.buckets_dropped);
  line("pairs retained", s.pairs_after_signature_filter);
  out << "alternation patterns\n";
  line("pairs with patterns", s.pairs_with_patterns);
  line("pattern pairs", s.pattern_pairs);
  out << "generality filter\n";
  line("surviving pattern pairs", s.surviving_pattern_pairs);
  line("pairs retained", s.pairs_after_generality_filter);
  line("morphynet minimal fallbacks", s.morphynet_fallbacks);
  line("morphynet pairs dropped", s.morphynet_dropped);
  out << "fap selection\n";
  line("faps selected", s.faps_selected);
  out << "tables\n";
  line("pairs.tsv rows", s.ordered_pairs);
  line("defs.tsv rows", s.defs);
  return out.str();
}

BuildResult run_pipeline(const PipelineInput& input, const BuildConfig& config,
                         const StopList& stop) {
  config.validate();
  BuildResult r;
  auto& sum = r.summary;
  sum.records = input.records.size();
  sum.morphynet_rows = input.morphynet.size();

  CandidateSet candidates = stage("candidates", [&] {
    auto index = LexiconIndex::build(input.records);
    auto defs = pairs_from_definitions(input.records, index, stop);
    auto sections = pairs_from_morph_sections(input.records, index);
    auto mn = pairs_from_morphynet(input.morphynet);
    sum.definition_candidates = defs.size();
    sum.section_candidates = sections.size();
    sum.morphynet_candidates = mn.size();
    return merge_candidates(defs, sections, mn);
  });
  sum.merged_candidates = candidates.size();

  Buckets buckets = stage("signature filter", [&] {
    BucketOptions bo{config.min_bucket, config.count_morphynet_in_buckets, config.case_fold};
    BucketOptions all_opts = bo;
    all_opts.min_bucket = 1;
    all_opts.count_morphynet_in_buckets = true;
    sum.signatures = bucket_by_signature(candidates, all_opts).size();
    return bucket_by_signature(candidates, bo);
  });
  CandidateSet first_filter;
  size_t full_buckets = 0;
  for (const auto& [sig, members] : buckets) {
    first_filter.insert(first_filter.end(), members.begin(), members.end());
    size_t counted = 0;
    for (const auto& c : members)
      if (!c.always_retain || config.count_morphynet_in_buckets) ++counted;
    if (counted >= config.min_bucket) ++full_buckets;
  }
  std::sort(first_filter.begin(), first_filter.end(),
            [](const CandidatePair& a, const CandidatePair& b) { return a.key() < b.key(); });
  sum.buckets_kept = full_buckets;
  sum.buckets_dropped = sum.signatures - full_buckets;
  sum.pairs_after_signature_filter = first_filter.size();

  PatternSets patterns = stage("alternation patterns", [&] {
    EnumerateOptions eo{config.max_slots, config.max_partners, config.threads};
    return enumerate_all(buckets, eo);
  });
  sum.pairs_with_patterns = patterns.size();

  r.diagnostics.generality = stage("generality filter", [&] {
    return filter_by_generality(first_filter, patterns, config.min_pattern_support, config.max_slots);
  });
  const auto& gen = r.diagnostics.generality;
  sum.pattern_pairs = gen.attribution.size();
  for (const auto& [p, n] : gen.attribution)
    if (n >= config.min_pattern_support) ++sum.surviving_pattern_pairs;
  sum.pairs_after_generality_filter = gen.retained.size();
  for (const auto& [key, set] : gen.retained)
    if (!patterns.count(key)) ++sum.morphynet_fallbacks;
  sum.morphynet_dropped = gen.dropped.size();

  r.diagnostics.annotations = stage("fap selection", [&] {
    std::set<Pattern> exprs;
    for (const auto& [key, set] : gen.retained)
      for (const auto& p : set) {
        exprs.insert(p.left);
        exprs.insert(p.right);
      }
    r.diagnostics.stats = compute_expression_stats(retained_lemmas(gen.retained), exprs, config.threads);
    std::vector<std::pair<const CandidatePair*, const std::set<PatternPair>*>> work;
    for (const auto& [key, set] : gen.retained) {
      auto it = std::lower_bound(first_filter.begin(), first_filter.end(), key,
                                 [](const CandidatePair& c, const PairKey& k) { return c.key() < k; });
      if (it == first_filter.end() || it->key() != key)
        throw InvariantError("retained pair missing from candidates");
      work.emplace_back(&*it, &set);
    }
    std::vector<FapAnnotation> ann(work.size());
    detail::parallel_for(work.size(), config.threads, [&](size_t i) {
      ann[i] = select_fap(*work[i].first, *work[i].second, r.diagnostics.stats);
    });
    return ann;
  });
  sum.faps_selected = r.diagnostics.annotations.size();

  r.tables = stage("tables", [&] { return materialize(r.diagnostics.annotations); });
  sum.ordered_pairs = r.tables.pairs.size();
  sum.defs = r.tables.defs.size();
  r.diagnostics.candidates = std::move(candidates);
  return r;
}

BuildResult run_build(const BuildConfig& config) {
  stage("config", [&] {
    config.validate();
    return 0;
  });
  PipelineInput input;
  std::vector<std::pair<std::string, SkipEntry>> skips;
  StopList stop = stage("config", [&] {
    if (!config.use_stop_list) return StopList::none();
    if (config.stop_list) return StopList::from_stream(*open_input(*config.stop_list));
    return StopList::builtin(config.language);
  });
  PosMap pos_map = stage("config", [&] {
    if (!config.pos_map) return PosMap::defaults();
    auto in = open_input(*config.pos_map);
    std::stringstream ss;
    ss << in->rdbuf();
    return PosMap::parse(ss.str());
  });

  stage("ingest", [&] {
    auto inputs = config.inputs;
    std::sort(inputs.begin(), inputs.end());
    for (const auto& spec : inputs) {
      auto in = open_input(spec.path);
      SkipReport rep;
      switch (spec.type) {
        case InputType::Kaikki: {
          auto recs = parse_kaikki(*in, rep, pos_map);
          std::move(recs.begin(), recs.end(), std::back_inserter(input.records));
          break;
        }
        case InputType::Normalized: {
          auto recs = parse_normalized(*in, rep);
          std::move(recs.begin(), recs.end(), std::back_inserter(input.records));
          break;
        }
        case InputType::MorphyNet: {
          auto rows = parse_morphynet(*in, rep, pos_map);
          std::move(rows.begin(), rows.end(), std::back_inserter(input.morphynet));
          break;
        }
      }
      for (const auto& e : rep.entries()) skips.emplace_back(spec.path.string(), e);
    }
    return 0;
  });

  BuildResult r = run_pipeline(input, config, stop);
  r.skips = std::move(skips);
  r.summary.skipped_lines = r.skips.size();

  stage("output", [&] {
    write_tables(r.tables, config.output_dir);
    auto out = open_output(config.skip_report.value_or(config.output_dir / "skips.tsv"));
    out << "file\tline\treason\n";
    for (const auto& [file, e] : r.skips)
      out << file << '\t' << e.line << '\t' << text::flatten_whitespace(e.reason) << '\n';
    if (config.diagnostics_dir) write_diagnostics(r, *config.diagnostics_dir);
    return 0;
  });
  return r;
}

void write_diagnostics(const BuildResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "candidates.tsv");
    write_candidates_tsv(out, r.diagnostics.candidates);
  }
  const auto& stats = r.diagnostics.stats;
  auto support = [&](const Pattern& p) -> std::string {
    auto it = stats.find(p);
    return it == stats.end() ? "-" : std::to_string(it->second.support);
  };
  {
    auto out = open_output(dir / "patterns.tsv");
    out << "exponent1\texponent2\tpair_count\tsupport1\tsupport2\n";
    for (const auto& [p, n] : r.diagnostics.generality.attribution)
      out << p.left.render() << '\t' << p.right.render() << '\t' << n << '\t' << support(p.left)
          << '\t' << support(p.right) << '\n';
  }
  {
    auto out = open_output(dir / "fap_audit.tsv");
    out << "lemma1\tcat1\tlemma2\tcat2\texponent1\texponent2\tscore\trunner_up1\trunner_up2\t"
           "runner_up_score\n";
    for (const auto& a : r.diagnostics.annotations) {
      out << a.pair.lemma1 << '\t' << to_char(a.pair.cat1) << '\t' << a.pair.lemma2 << '\t'
          << to_char(a.pair.cat2) << '\t' << a.pattern.left.render() << '\t'
          << a.pattern.right.render() << '\t' << a.score << '\t';
      if (a.runner_up)
        out << a.runner_up->left.render() << '\t' << a.runner_up->right.render() << '\t'
            << a.runner_up_score;
      else
        out << "-\t-\t-";
      out << '\n';
    }
  }
}

}  // namespace fapinette
