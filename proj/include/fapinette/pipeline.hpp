#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fapinette/analogy.hpp"
#include "fapinette/candidates.hpp"
#include "fapinette/errors.hpp"
#include "fapinette/fap.hpp"
#include "fapinette/ingest.hpp"
#include "fapinette/lexicon.hpp"

namespace fapinette {

enum class InputType { Kaikki, MorphyNet, Normalized };

std::string to_string(InputType t);

struct InputSpec {
  InputType type = InputType::Normalized;
  std::filesystem::path path;

  auto operator<=>(const InputSpec&) const = default;
};

struct BuildConfig {
  std::vector<InputSpec> inputs;
  std::string language = "en";
  size_t min_bucket = 5;
  size_t min_pattern_support = 5;
  size_t max_slots = 2;
  size_t max_partners = std::numeric_limits<size_t>::max();
  bool count_morphynet_in_buckets = false;
  bool case_fold = false;
  bool use_stop_list = true;
  /// Replaces the built-in function-word list for `language`.
  std::optional<std::filesystem::path> stop_list;
  std::optional<std::filesystem::path> pos_map;
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> skip_report;
  std::optional<std::filesystem::path> diagnostics_dir;
  size_t threads = 1;

  /// Throws InvariantError naming the offending setting.
  void validate() const;
};

/// A pipeline failure tagged with the stage it happened in.
class StageError : public Error {
public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

struct StageSummary {
  size_t records = 0;
  size_t morphynet_rows = 0;
  size_t skipped_lines = 0;
  size_t definition_candidates = 0;
  size_t section_candidates = 0;
  size_t morphynet_candidates = 0;
  size_t merged_candidates = 0;
  size_t signatures = 0;
  size_t buckets_kept = 0;
  size_t buckets_dropped = 0;
  size_t pairs_after_signature_filter = 0;
  size_t pairs_with_patterns = 0;
  size_t pattern_pairs = 0;
  size_t surviving_pattern_pairs = 0;
  size_t pairs_after_generality_filter = 0;
  size_t morphynet_fallbacks = 0;
  size_t morphynet_dropped = 0;
  size_t faps_selected = 0;
  size_t ordered_pairs = 0;
  size_t defs = 0;
};

std::string format_summary(const StageSummary& s);

struct PipelineInput {
  std::vector<DictionaryRecord> records;
  std::vector<MorphyNetRow> morphynet;
};

struct Diagnostics {
  CandidateSet candidates;
  GeneralityResult generality;
  StatsMap stats;
  std::vector<FapAnnotation> annotations;
};

struct BuildResult {
  Tables tables;
  StageSummary summary;
  Diagnostics diagnostics;
  /// (input path, skipped line) for every dropped input line.
  std::vector<std::pair<std::string, SkipEntry>> skips;
};

/// Runs candidates → buckets → patterns → filters → FAP → tables in memory.
BuildResult run_pipeline(const PipelineInput& input, const BuildConfig& config,
                         const StopList& stop);

/// Reads every input (ordered by type then path), runs the pipeline and
/// writes the tables, skip report and optional diagnostics.
BuildResult run_build(const BuildConfig& config);

void write_diagnostics(const BuildResult& r, const std::filesystem::path& dir);

}  // namespace fapinette
