#include "stacklab/ornstein.hpp"

namespace stacklab {

std::uint64_t prng_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t sample_uniform(std::uint64_t& state, std::uint64_t m) {
  if (m == 0) throw parameter_error("sample_uniform: m must be >= 1");
  // 2^64 - (2^64 mod m); when m divides 2^64 every draw is accepted.
  std::uint64_t rem = (static_cast<std::uint64_t>(-m)) % m;  // 2^64 mod m
  std::uint64_t bound = 0 - rem;                             // m * floor(2^64/m)
  for (;;) {
    std::uint64_t z = prng_next(state);
    if (rem == 0 || z < bound) return z % m;
  }
}

OmegaDraw sample_omega(const ConstructionSpec& spec, std::uint64_t seed) {
  if (spec.mode != SpacerMode::ornstein)
    throw parameter_error("sample_omega: spec is not in ornstein mode");
  spec.validate();
  std::vector<BigInt> h = ornstein_heights(spec);
  for (int k = 0; k < spec.stages; ++k)
    if (2 * BigInt(spec.spacer_range[k]) > h[k])
      throw construction_error("sample_omega: 2 t_k > h_k at stage " +
                               std::to_string(k));
  OmegaDraw draw;
  draw.seed = seed;
  draw.draws.resize(spec.stages);
  std::uint64_t state = seed;
  for (int k = 0; k < spec.stages; ++k) {
    long long t = spec.spacer_range[k];
    draw.draws[k].reserve(spec.cuts[k] - 1);
    for (int i = 0; i < spec.cuts[k] - 1; ++i) {
      std::uint64_t v =
          sample_uniform(state, static_cast<std::uint64_t>(2 * t + 1));
      draw.draws[k].push_back(static_cast<long long>(v) - t);
    }
  }
  return draw;
}

std::vector<SpacerStage> omega_spacers(const ConstructionSpec& spec,
                                       const OmegaDraw& draw) {
  if (static_cast<int>(draw.draws.size()) != spec.stages)
    throw parameter_error("omega_spacers: draw has wrong stage count");
  std::vector<SpacerStage> out;
  out.reserve(spec.stages);
  for (int k = 0; k < spec.stages; ++k)
    out.push_back(ornstein_spacers(k, spec.spacer_range[k], spec.cuts[k],
                                   draw.draws[k], spec.last_spacer[k]));
  return out;
}

FrequencySequence frequency_sequence(const OmegaDraw& draw,
                                     std::span<const BigInt> heights,
                                     int max_cut) {
  FrequencySequence seq;
  seq.values.reserve(draw.draws.size());
  for (std::size_t k = 0; k < draw.draws.size(); ++k) {
    if (draw.draws[k].empty())
      throw parameter_error("frequency_sequence: stage with no draws");
    seq.values.push_back(heights[k] + draw.draws[k][0]);
  }
  for (std::size_t k = 0; k + 1 < seq.values.size(); ++k) {
    if (seq.values[k + 1] <= seq.values[k])
      throw invariant_error("frequency_sequence: n not strictly increasing at k=" +
                            std::to_string(k));
    if (seq.values[k + 1] > (max_cut + 1) * seq.values[k])
      throw invariant_error("frequency_sequence: ratio bound p+1 violated at k=" +
                            std::to_string(k));
  }
  return seq;
}

std::vector<BigInt> screen_sequence(SequenceKind kind,
                                    std::span<const BigInt> heights,
                                    std::span<const SpacerStage> spacers,
                                    const OmegaDraw* draw) {
  std::size_t rows = spacers.size();
  if (heights.size() < rows + 1)
    throw parameter_error("screen_sequence: heights must cover every row");
  std::vector<BigInt> seq;
  seq.reserve(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    if (kind == SequenceKind::criterion) {
      seq.push_back(heights[k] + spacers[k].counts.at(0));
    } else {
      if (draw == nullptr || draw->draws.size() <= k || draw->draws[k].empty())
        throw parameter_error(
            "screen_sequence: frequency sequence needs a sampled draw");
      seq.push_back(heights[k] + draw->draws[k][0]);
    }
  }
  return seq;
}

std::vector<int> chacon_pattern_scan(std::span<const SpacerStage> spacers) {
  std::vector<int> flagged;
  for (const SpacerStage& st : spacers) {
    for (std::size_t i = 0; i + 1 < st.counts.size(); ++i) {
      if (st.counts[i + 1] == st.counts[i] + 1) {
        flagged.push_back(st.stage);
        break;
      }
    }
  }
  return flagged;
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t master_seed, int trials) {
  if (trials < 0) throw parameter_error("trial_seeds: trials must be >= 0");
  std::vector<std::uint64_t> seeds;
  seeds.reserve(trials);
  std::uint64_t state = master_seed;
  for (int i = 0; i < trials; ++i) seeds.push_back(prng_next(state));
  return seeds;
}

}  // namespace stacklab
