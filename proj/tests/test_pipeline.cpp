#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fapinette/analysis.hpp"
#include "fapinette/pipeline.hpp"
#include "oracles.hpp"

using namespace fapinette;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FAPINETTE_TEST_DATA;
const std::string kCli = FAPINETTE_CLI;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("fapinette_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

BuildConfig mini_config(const fs::path& out) {
  BuildConfig c;
  c.inputs = {{InputType::Kaikki, kData / "mini/corpus.jsonl"}, {InputType::MorphyNet, kData / "mini/morphynet.tsv"}};
  c.output_dir = out;
  return c;
}

std::set<PairKey> pair_keys(const Tables& t) {
  std::set<PairKey> s;
  for (const auto& e : t.pairs) s.insert(e.key());
  return s;
}

int run(const std::string& args) {
  int rc = std::system((kCli + " " + args).c_str());
#ifdef WEXITSTATUS
  if (rc != -1) rc = WEXITSTATUS(rc);
#endif
  return rc;
}

}  // namespace

TEST_CASE("mini-corpus build matches the golden tables") {
  auto out = scratch("golden");
  auto r = run_build(mini_config(out));
  CHECK(slurp(out / "pairs.tsv") == slurp(kData / "golden/pairs.tsv"));
  CHECK(slurp(out / "defs.tsv") == slurp(kData / "golden/defs.tsv"));
  CHECK(r.summary.records == 290);
  CHECK(r.summary.skipped_lines == 7);
  auto skips = oracle::read_tsv((out / "skips.tsv").string());
  REQUIRE(skips.size() == 8);
  CHECK(skips[0] == std::vector<std::string>{"file", "line", "reason"});
  CHECK(skips[1][1] == "38");
  CHECK(skips[1][2] == "unmappable POS");
}

TEST_CASE("builds are byte-identical across runs and thread counts") {
  std::string pairs, defs;
  for (size_t threads : {1, 4, 8, 1, 4}) {
    auto out = scratch("threads");
    auto cfg = mini_config(out);
    cfg.threads = threads;
    run_build(cfg);
    if (pairs.empty()) {
      pairs = slurp(out / "pairs.tsv");
      defs = slurp(out / "defs.tsv");
      continue;
    }
    CHECK(slurp(out / "pairs.tsv") == pairs);
    CHECK(slurp(out / "defs.tsv") == defs);
  }
}

TEST_CASE("input order does not matter") {
  auto a = scratch("order_a");
  auto b = scratch("order_b");
  auto ca = mini_config(a);
  auto cb = mini_config(b);
  std::swap(cb.inputs[0], cb.inputs[1]);
  run_build(ca);
  run_build(cb);
  CHECK(slurp(a / "pairs.tsv") == slurp(b / "pairs.tsv"));
}

TEST_CASE("relaxing thresholds only adds pairs") {
  auto base = run_build(mini_config(scratch("base")));
  auto cfg = mini_config(scratch("relaxed"));
  cfg.min_bucket = 1;
  auto relaxed = run_build(cfg);
  auto k0 = pair_keys(base.tables), k1 = pair_keys(relaxed.tables);
  CHECK(std::includes(k1.begin(), k1.end(), k0.begin(), k0.end()));
  CHECK(k1.size() > k0.size());
  CHECK(k1.count({"simplify", PosTag::V, "simplification", PosTag::N}));
  CHECK_FALSE(k0.count({"simplify", PosTag::V, "simplification", PosTag::N}));

  cfg = mini_config(scratch("relaxed2"));
  cfg.min_bucket = 1;
  cfg.min_pattern_support = 1;
  auto loose = run_build(cfg);
  auto k2 = pair_keys(loose.tables);
  CHECK(std::includes(k2.begin(), k2.end(), k0.begin(), k0.end()));
}

TEST_CASE("the stop list only removes definition candidates on stopped tokens") {
  auto with = run_build(mini_config(scratch("stop_on")));
  auto cfg = mini_config(scratch("stop_off"));
  cfg.use_stop_list = false;
  auto without = run_build(cfg);
  std::set<PairKey> a, b;
  for (const auto& c : with.diagnostics.candidates) a.insert(c.key());
  for (const auto& c : without.diagnostics.candidates) b.insert(c.key());
  CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  CHECK(with.tables == without.tables);
  auto stop = StopList::builtin("en");
  for (const auto& k : b)
    if (!a.count(k)) CHECK_MESSAGE(stop.contains(k.lemma1), k.lemma1);

  cfg = mini_config(scratch("stop_file"));
  cfg.stop_list = kData / "mini/stoplist.txt";
  CHECK(pair_keys(run_build(cfg).tables) == pair_keys(with.tables));

  auto dir = scratch("stop_happy");
  std::ofstream(dir / "stop.txt") << slurp(kData / "mini/stoplist.txt") << "happy\n";
  cfg = mini_config(dir / "out");
  cfg.stop_list = dir / "stop.txt";
  auto custom = run_build(cfg);
  CHECK_FALSE(pair_keys(custom.tables).count({"happy", PosTag::A, "unhappy", PosTag::A}));
  CHECK(pair_keys(with.tables).count({"happy", PosTag::A, "unhappy", PosTag::A}));
}

TEST_CASE("golden build passes every table invariant") {
  auto out = scratch("invariants");
  auto r = run_build(mini_config(out));
  for (const auto& e : r.tables.pairs) CHECK_FALSE(check_entry(e));
  for (const auto& d : r.tables.defs) CHECK_FALSE(check_def(d));
  CHECK(check_tables(r.tables).empty());
  auto [rows, defs, sets, def_sets] = oracle::recount(out.string());
  CHECK(compute_stats(r.tables) == BuildStats{rows, defs, sets, def_sets});
  auto back = read_tables(out);
  CHECK(back.tables == r.tables);
}

TEST_CASE("stage summary and diagnostics") {
  auto out = scratch("diag");
  auto cfg = mini_config(out);
  cfg.diagnostics_dir = out / "diag";
  auto r = run_build(cfg);
  auto text = format_summary(r.summary);
  CHECK(text.find("signature filter") != std::string::npos);
  CHECK(r.summary.ordered_pairs == r.tables.pairs.size());
  CHECK(r.summary.morphynet_dropped == 2);
  for (const char* f : {"candidates.tsv", "patterns.tsv", "fap_audit.tsv"}) CHECK(fs::exists(out / "diag" / f));
  auto audit = oracle::read_tsv((out / "diag/fap_audit.tsv").string());
  CHECK(audit.size() == r.diagnostics.annotations.size() + 1);
}

TEST_CASE("fallback lemmatizer loses inflected mentions") {
  DictionaryRecord accuse{"accuse", PosTag::V, {}, {}, {}};
  DictionaryRecord raw{"accusation", PosTag::N, {{"The act of accusing.", std::nullopt}}, {}, {}};
  DictionaryRecord lem{"accusation", PosTag::N,
                       {{"The act of accusing.", std::vector<std::string>{"the", "act", "of", "accuse", "."}}}, {}, {}};
  auto stop = StopList::builtin("en");
  auto idx = LexiconIndex::build({accuse, raw});
  CHECK(pairs_from_definitions({accuse, raw}, idx, stop).empty());
  CHECK(pairs_from_definitions({accuse, lem}, idx, stop).size() == 1);
}

TEST_CASE("invalid configuration fails in the config stage") {
  BuildConfig c;
  CHECK_THROWS_AS(run_build(c), StageError);
  auto cfg = mini_config(scratch("badcfg"));
  cfg.min_bucket = 0;
  try {
    run_build(cfg);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "config");
  }
  cfg = mini_config(scratch("missing"));
  cfg.inputs.push_back({InputType::Kaikki, "/nonexistent/input.jsonl"});
  try {
    run_build(cfg);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "ingest");
  }
}

TEST_CASE("cli build, config file and analysis commands") {
  auto dir = scratch("cli");
  auto corpus = (kData / "mini/corpus.jsonl").string();
  auto mn = (kData / "mini/morphynet.tsv").string();
  REQUIRE(run("build -q --kaikki " + corpus + " --morphynet " + mn + " -o " + (dir / "a").string()) == 0);
  CHECK(slurp(dir / "a/pairs.tsv") == slurp(kData / "golden/pairs.tsv"));
  CHECK(fs::exists(dir / "a/stats.txt"));
  CHECK(slurp(dir / "a/stats.json") == stats_json(compute_stats(read_tables(dir / "a").tables)) + "\n");

  {
    std::ofstream cfg(dir / "build.toml");
    cfg << "[build]\nkaikki = [\"" << corpus << "\"]\nmorphynet = \"" << mn << "\"\nmin-bucket = 1\n"
        << "output = \"" << (dir / "b").string() << "\"\nquiet = true\n";
  }
  REQUIRE(run("build --config " + (dir / "build.toml").string()) == 0);
  auto relaxed = read_tables(dir / "b").tables;
  CHECK(relaxed.pairs.size() > read_tables(dir / "a").tables.pairs.size());
  {
    std::ofstream cfg(dir / "bad.toml");
    cfg << "[build]\nno-such-key = 1\n";
  }
  CHECK(run("build --config " + (dir / "bad.toml").string() + " --kaikki " + corpus + " 2>/dev/null") != 0);
  CHECK(run("build -q --kaikki /nonexistent.jsonl -o " + (dir / "c").string() + " 2>" + (dir / "err.txt").string()) != 0);
  CHECK(slurp(dir / "err.txt").find("ingest") != std::string::npos);

  auto golden = (kData / "golden").string();
  REQUIRE(run("symmetry " + golden + " > " + (dir / "sym.tsv").string()) == 0);
  auto sym = oracle::read_tsv((dir / "sym.tsv").string());
  size_t listed = 0;
  for (size_t i = 1; i < sym.size(); ++i)
    if (!sym[i].empty() && sym[i][0].rfind("#", 0) != 0) ++listed;
  CHECK(listed == mutual_motivation(read_tables(golden).tables.defs).mutual_count());

  REQUIRE(run("backform " + golden + " > " + (dir / "bf1.tsv").string()) == 0);
  REQUIRE(run("backform --no-length-filter " + golden + " > " + (dir / "bf2.tsv").string()) == 0);
  auto bf1 = oracle::read_tsv((dir / "bf1.tsv").string());
  auto bf2 = oracle::read_tsv((dir / "bf2.tsv").string());
  std::set<std::vector<std::string>> s1(bf1.begin(), bf1.end()), s2(bf2.begin(), bf2.end());
  CHECK(std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()));
  CHECK(bf1.size() > 1);

  CHECK(run("triangles " + golden + " > /dev/null") == 0);
  CHECK(run("rivalry " + golden + " > /dev/null") == 0);
  CHECK(run("stolons " + golden + " --anchor-left '^(.+)$' --anchor-right '^re(.+)$' > /dev/null") == 0);
  CHECK(run("stats " + golden + " --json > " + (dir / "stats.json").string()) == 0);
  CHECK(slurp(dir / "stats.json") == stats_json(compute_stats(read_tables(golden).tables)) + "\n");
}

TEST_CASE("cli convert round-trips through the normalized format") {
  auto dir = scratch("convert");
  auto corpus = (kData / "mini/corpus.jsonl").string();
  REQUIRE(run("convert " + corpus + " -o " + (dir / "n.jsonl").string() + " --skip-report " +
              (dir / "skips.tsv").string() + " 2>/dev/null") == 0);
  auto a = mini_config(dir / "a");
  auto b = mini_config(dir / "b");
  b.inputs[0] = {InputType::Normalized, dir / "n.jsonl"};
  run_build(a);
  run_build(b);
  CHECK(slurp(dir / "a/pairs.tsv") == slurp(dir / "b/pairs.tsv"));
  CHECK(slurp(dir / "a/defs.tsv") == slurp(dir / "b/defs.tsv"));
  CHECK(oracle::read_tsv((dir / "skips.tsv").string()).size() == 5);
}
