#pragma once

#include <span>
#include <string>
#include <vector>

#include "stacklab/numeric.hpp"

namespace stacklab {

enum class SpacerMode {
  deterministic,  // spacer counts a_j^{(k)} given explicitly
  ornstein,       // spacer counts derived from uniform draws on {-t_k..t_k}
};

// Parameter schedules for a finite-stage cutting-and-stacking tower.
// Arrays are indexed by the stage being cut: row k (0 <= k < stages) cuts
// the stage-k tower into cuts[k] columns and produces stage k+1.
struct ConstructionSpec {
  SpacerMode mode = SpacerMode::ornstein;
  int stages = 0;                     // K >= 1; heights run h_0..h_K
  std::vector<int> cuts;              // p_k >= 2, size K
  std::vector<long long> spacer_range;  // t_k >= 0, size K (ornstein)
  std::vector<long long> last_spacer;   // x_{k,p_k} >= 0, size K (ornstein)
  std::vector<std::vector<long long>> spacers;  // a^{(k)}, size K (deterministic)

  int max_cut() const;
  // Shape and sign checks; throws parameter_error.
  void validate() const;
};

// Spacer counts a_j^{(k)}, j = 1..p_k, placed above the columns of the
// stage-k tower when building stage k+1.
struct SpacerStage {
  int stage = 0;
  std::vector<long long> counts;

  long long total() const;
};

// One finite construction stage. column_offsets[j] is the start position
// of column j+1 of the previous stage inside this tower, so
// column_offsets[0] = 0 and offsets step by h_{k-1} + a_j.
struct TowerStage {
  int stage = 0;       // k >= 1
  BigInt height;       // h_k
  Rational width;      // w_k = 1 / prod_{i<k} p_i
  SpacerStage spacers;  // the stage k-1 spacers used to build this stage
  std::vector<BigInt> column_offsets;
};

// Fully built finite tower chain: heights h_0..h_K and stages 1..K.
struct Tower {
  ConstructionSpec spec;
  std::vector<BigInt> heights;      // size K+1, heights[0] = 1
  std::vector<Rational> widths;     // size K+1, widths[0] = 1
  std::vector<TowerStage> stages;   // size K, stages[k-1] is stage k

  const TowerStage& stage(int k) const;  // k in [1, K]
};

struct MassReport {
  Rational spacer_sum;   // sum_k t_k / h_k
  Rational last_sum;     // sum_k x_{k,p_k} / (p_k h_k)
  Rational total_mass;   // h_K * w_K
  bool diverging_risk = false;  // heuristic flag, never an assertion
};

// Classification of one level of a stage-k tower relative to stage k-1.
struct LevelDecode {
  bool is_spacer = false;
  int column = 0;  // 1-based column index j
  BigInt inner;    // previous-stage level, or spacer index within the column
};

// h_{k+1} = p_k h_k + sum_j a_j^{(k)}, h_0 = 1. Returns h_0..h_K.
std::vector<BigInt> height_sequence(const ConstructionSpec& spec,
                                    std::span<const SpacerStage> spacers);

// Closed form for ornstein mode: h_{k+1} = p_k (h_k + 2 t_k) + x_{k,p_k}.
// Heights do not depend on the random draws, only on (p, t, x_last).
std::vector<BigInt> ornstein_heights(const ConstructionSpec& spec);

// a_i = 2t + x_i - x_{i-1} with x_0 = 0 and x_{p} = x_last.
// draws holds x_1..x_{p-1}, each in [-t, t].
SpacerStage ornstein_spacers(int stage, long long t, int p,
                             std::span<const long long> draws,
                             long long x_last);

// The explicitly-given spacer stages of a deterministic-mode spec.
std::vector<SpacerStage> deterministic_spacers(const ConstructionSpec& spec);

Tower build_tower(const ConstructionSpec& spec,
                  std::span<const SpacerStage> spacers);

LevelDecode decode_level(const BigInt& level, const TowerStage& stage);

// Word over {B, s} for stage k, expanded down to stage 0; length h_k.
std::string symbolic_name(int k, const Tower& tower);

// Partial sums of the paper's finiteness condition plus the stage-K mass.
// For deterministic mode the t-sum has no parameter to report and is 0;
// all spacer mass is folded into last_sum as sum_k (sum_j a_j)/(p_k h_k).
MassReport mass_report(const ConstructionSpec& spec,
                       std::span<const BigInt> heights,
                       const Rational& risk_threshold = Rational(1, 10));

}  // namespace stacklab
