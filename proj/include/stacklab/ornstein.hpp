#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stacklab/construction.hpp"

namespace stacklab {

// SplitMix64 step. The exact constants and update order are part of the
// reproducibility contract: golden files depend on this bit pattern.
// Returns the output; advances state in place.
std::uint64_t prng_next(std::uint64_t& state);

// Unbiased uniform draw on [0, m) by rejection: outputs >= m * floor(2^64/m)
// are discarded and redrawn. The number of consumed outputs is
// deterministic in (state, m).
std::uint64_t sample_uniform(std::uint64_t& state, std::uint64_t m);

// One sampled omega: the draw matrix x_{k,i} (row k has p_k - 1 entries,
// each uniform on {-t_k..t_k}) plus the seed that produced it.
struct OmegaDraw {
  std::uint64_t seed = 0;
  std::vector<std::vector<long long>> draws;
};

// Samples x_{k,i} = sample_uniform(., 2 t_k + 1) - t_k in row-major order
// (k ascending, i ascending). Heights are draw-independent, so the
// precondition 2 t_k <= h_k is checked up front for every stage.
OmegaDraw sample_omega(const ConstructionSpec& spec, std::uint64_t seed);

// Spacer stages of an ornstein spec under a given draw.
std::vector<SpacerStage> omega_spacers(const ConstructionSpec& spec,
                                       const OmegaDraw& draw);

struct FrequencySequence {
  std::vector<BigInt> values;  // n_k = h_k + x_{k,1}, k = 0..K-1
};

// n_k(omega) = h_k + x_{k,1}. Verifies n strictly increasing and
// n_{k+1}/n_k <= max_cut + 1; a violation throws invariant_error.
// Early stages with t_k comparable to h_k can legally violate the ratio
// bound, which is asymptotic; callers that only need the values should
// use screen_sequence instead.
FrequencySequence frequency_sequence(const OmegaDraw& draw,
                                     std::span<const BigInt> heights,
                                     int max_cut);

enum class SequenceKind {
  criterion,  // h_k + a_1^{(k)} (the eigenvalue criterion sequence)
  frequency,  // h_k + x_{k,1}
};

// The candidate sequence without any ratio assertion, entries k = 0..K-1.
std::vector<BigInt> screen_sequence(SequenceKind kind,
                                    std::span<const BigInt> heights,
                                    std::span<const SpacerStage> spacers,
                                    const OmegaDraw* draw);

// Stages k whose spacer row contains adjacent counts with
// a_{i+1} = a_i + 1 (the configuration yielding return times h and h+1).
std::vector<int> chacon_pattern_scan(std::span<const SpacerStage> spacers);

// Trial seeds derived from a master seed: seed_i is the output of the
// (i+1)-th prng_next application to the master state.
std::vector<std::uint64_t> trial_seeds(std::uint64_t master_seed, int trials);

}  // namespace stacklab
