#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stacklab/construction.hpp"
#include "stacklab/diagnostics.hpp"
#include "stacklab/ornstein.hpp"
#include "stacklab/spectral.hpp"

namespace stacklab {

enum class ExperimentKind {
  build,       // heights, widths, mass accounting
  sample,      // one omega draw, golden-file format
  screen,      // eigenvalue candidate screen on one construction
  diagnose,    // correlations / rigidity / Cesaro at a fixed stage
  montecarlo,  // weak-mixing screen over many trials
  chacon_scan, // pattern scan over many trials
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::build;
  ConstructionSpec spec;
  Rational eps = Rational(1, 50);
  int window_first = 0;
  int window_last = -1;  // -1: full range [0, K-1]
  SequenceKind sequence = SequenceKind::criterion;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::string output_path = "out";
  // diagnose parameters
  int eval_stage = -1;                    // K for correlations; -1: spec.stages
  int level_stage = 1;                    // stage of the level set A
  std::vector<std::uint64_t> levels;      // empty: full stage
  std::vector<std::uint64_t> shifts;
  std::uint64_t cesaro_horizon = 0;       // 0: skip the Cesaro score
};

// Parses the JSON config document. Rationals must be "num/den" strings;
// floats are rejected. Throws parameter_error with a single-line message.
ExperimentConfig parse_config(const std::string& json_text);

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t nontrivial_survivors = 0;
  // nontrivial survivor count at each window end in [window_first, window_last]
  std::vector<std::uint64_t> survivors_by_end;
  std::uint64_t pattern_stages = 0;
};

struct MonteCarloSummary {
  int trials = 0;
  std::vector<TrialRow> rows;
  Rational fraction_empty;         // trials with zero nontrivial survivors
  Rational fraction_with_pattern;  // trials with >= 1 flagged stage
  // fraction_empty had the window ended at each k in [first, last]
  std::vector<Rational> fraction_empty_by_end;
};

// Per trial: derive the trial seed, sample omega, build spacers, screen the
// configured sequence over the window, count nontrivial survivors. A failed
// trial propagates its error; trials are never resampled.
MonteCarloSummary montecarlo_wmix(const ExperimentConfig& config);

// Per trial: chacon_pattern_scan over all stages.
MonteCarloSummary montecarlo_chacon(const ExperimentConfig& config);

// Runs the configured experiment, writing its artifact files plus
// manifest.json (the effective config and a content hash per file) into
// config.output_path. Returns the list of files written (manifest last).
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

// FNV-1a 64-bit content hash, hex-encoded; the manifest hash primitive.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace stacklab
