#include "stacklab/construction.hpp"

#include <algorithm>

namespace stacklab {

int ConstructionSpec::max_cut() const {
  int m = 0;
  for (int p : cuts) m = std::max(m, p);
  return m;
}

void ConstructionSpec::validate() const {
  if (stages < 1) throw parameter_error("spec: stage count K must be >= 1");
  if (static_cast<int>(cuts.size()) != stages)
    throw parameter_error("spec: p must have exactly K entries");
  for (int k = 0; k < stages; ++k)
    if (cuts[k] < 2)
      throw parameter_error("spec: p_" + std::to_string(k) + " must be >= 2");
  if (mode == SpacerMode::ornstein) {
    if (static_cast<int>(spacer_range.size()) != stages)
      throw parameter_error("spec: t must have exactly K entries");
    if (static_cast<int>(last_spacer.size()) != stages)
      throw parameter_error("spec: x_last must have exactly K entries");
    for (int k = 0; k < stages; ++k) {
      if (spacer_range[k] < 0)
        throw parameter_error("spec: t_" + std::to_string(k) + " must be >= 0");
      if (last_spacer[k] < 0)
        throw parameter_error("spec: x_last_" + std::to_string(k) +
                              " must be >= 0");
    }
  } else {
    if (static_cast<int>(spacers.size()) != stages)
      throw parameter_error("spec: spacers must have exactly K stages");
    for (int k = 0; k < stages; ++k) {
      if (static_cast<int>(spacers[k].size()) != cuts[k])
        throw parameter_error("spec: spacer stage " + std::to_string(k) +
                              " must have p_k entries");
      for (long long a : spacers[k])
        if (a < 0)
          throw parameter_error("spec: spacer counts must be >= 0 (stage " +
                                std::to_string(k) + ")");
    }
  }
}

long long SpacerStage::total() const {
  long long s = 0;
  for (long long a : counts) s += a;
  return s;
}

std::vector<BigInt> height_sequence(const ConstructionSpec& spec,
                                    std::span<const SpacerStage> spacers) {
  if (static_cast<int>(spacers.size()) != spec.stages)
    throw parameter_error("height_sequence: need one spacer stage per cut");
  std::vector<BigInt> h;
  h.reserve(spec.stages + 1);
  h.push_back(1);
  for (int k = 0; k < spec.stages; ++k) {
    if (static_cast<int>(spacers[k].counts.size()) != spec.cuts[k])
      throw parameter_error("height_sequence: stage " + std::to_string(k) +
                            " has " + std::to_string(spacers[k].counts.size()) +
                            " spacer counts, expected p_k = " +
                            std::to_string(spec.cuts[k]));
    BigInt next = h.back() * spec.cuts[k];
    for (long long a : spacers[k].counts) {
      if (a < 0)
        throw parameter_error("height_sequence: negative spacer count at stage " +
                              std::to_string(k));
      next += a;
    }
    h.push_back(next);
  }
  return h;
}

std::vector<BigInt> ornstein_heights(const ConstructionSpec& spec) {
  if (spec.mode != SpacerMode::ornstein)
    throw parameter_error("ornstein_heights: spec is not in ornstein mode");
  spec.validate();
  std::vector<BigInt> h;
  h.reserve(spec.stages + 1);
  h.push_back(1);
  for (int k = 0; k < spec.stages; ++k)
    h.push_back(spec.cuts[k] * (h.back() + 2 * BigInt(spec.spacer_range[k])) +
                spec.last_spacer[k]);
  return h;
}

SpacerStage ornstein_spacers(int stage, long long t, int p,
                             std::span<const long long> draws,
                             long long x_last) {
  if (t < 0) throw parameter_error("ornstein_spacers: t must be >= 0");
  if (p < 2) throw parameter_error("ornstein_spacers: p must be >= 2");
  if (x_last < 0) throw parameter_error("ornstein_spacers: x_last must be >= 0");
  if (static_cast<int>(draws.size()) != p - 1)
    throw parameter_error("ornstein_spacers: need exactly p-1 draws");
  for (long long x : draws)
    if (x < -t || x > t)
      throw parameter_error("ornstein_spacers: draw out of [-t, t] at stage " +
                            std::to_string(stage));
  SpacerStage out;
  out.stage = stage;
  out.counts.reserve(p);
  long long prev = 0;
  for (int i = 1; i <= p; ++i) {
    long long xi = (i < p) ? draws[i - 1] : x_last;
    out.counts.push_back(2 * t + xi - prev);
    prev = xi;
  }
  return out;
}

std::vector<SpacerStage> deterministic_spacers(const ConstructionSpec& spec) {
  if (spec.mode != SpacerMode::deterministic)
    throw parameter_error("deterministic_spacers: spec is not deterministic");
  spec.validate();
  std::vector<SpacerStage> out;
  out.reserve(spec.stages);
  for (int k = 0; k < spec.stages; ++k)
    out.push_back(SpacerStage{k, spec.spacers[k]});
  return out;
}

Tower build_tower(const ConstructionSpec& spec,
                  std::span<const SpacerStage> spacers) {
  spec.validate();
  Tower tower;
  tower.spec = spec;
  tower.heights = height_sequence(spec, spacers);
  tower.widths.reserve(spec.stages + 1);
  tower.widths.push_back(1);
  for (int k = 0; k < spec.stages; ++k)
    tower.widths.push_back(tower.widths.back() / spec.cuts[k]);
  tower.stages.reserve(spec.stages);
  for (int k = 1; k <= spec.stages; ++k) {
    TowerStage st;
    st.stage = k;
    st.height = tower.heights[k];
    st.width = tower.widths[k];
    st.spacers = spacers[k - 1];
    st.column_offsets.reserve(spec.cuts[k - 1]);
    BigInt c = 0;
    for (int j = 0; j < spec.cuts[k - 1]; ++j) {
      st.column_offsets.push_back(c);
      c += tower.heights[k - 1] + spacers[k - 1].counts[j];
    }
    if (c != st.height)
      throw invariant_error("build_tower: column offsets do not tile stage " +
                            std::to_string(k));
    tower.stages.push_back(std::move(st));
  }
  return tower;
}

const TowerStage& Tower::stage(int k) const {
  if (k < 1 || k > static_cast<int>(stages.size()))
    throw parameter_error("tower stage index out of range");
  return stages[k - 1];
}

LevelDecode decode_level(const BigInt& level, const TowerStage& stage) {
  if (level < 0 || level >= stage.height)
    throw parameter_error("decode_level: level out of [0, h_k)");
  int p = static_cast<int>(stage.column_offsets.size());
  BigInt prev_height = (stage.height - stage.spacers.total()) / p;
  for (int j = p - 1; j >= 0; --j) {
    if (level >= stage.column_offsets[j]) {
      BigInt off = level - stage.column_offsets[j];
      if (off < prev_height) return LevelDecode{false, j + 1, off};
      return LevelDecode{true, j + 1, off - prev_height};
    }
  }
  throw invariant_error("decode_level: unreachable");
}

std::string symbolic_name(int k, const Tower& tower) {
  if (k < 0 || k > tower.spec.stages)
    throw parameter_error("symbolic_name: stage out of range");
  std::string word = "B";
  for (int s = 0; s < k; ++s) {
    const SpacerStage& sp = tower.stages[s].spacers;
    std::string next;
    next.reserve(word.size() * sp.counts.size() +
                 static_cast<std::size_t>(sp.total()));
    for (long long a : sp.counts) {
      next += word;
      next.append(static_cast<std::size_t>(a), 's');
    }
    word = std::move(next);
  }
  return word;
}

MassReport mass_report(const ConstructionSpec& spec,
                       std::span<const BigInt> heights,
                       const Rational& risk_threshold) {
  if (static_cast<int>(heights.size()) != spec.stages + 1)
    throw parameter_error("mass_report: heights must run h_0..h_K");
  MassReport rep;
  rep.spacer_sum = 0;
  rep.last_sum = 0;
  if (spec.mode == SpacerMode::ornstein) {
    for (int k = 0; k < spec.stages; ++k) {
      rep.spacer_sum += Rational(spec.spacer_range[k], heights[k]);
      rep.last_sum +=
          Rational(spec.last_spacer[k], spec.cuts[k] * heights[k]);
    }
    rep.diverging_risk =
        Rational(spec.spacer_range[spec.stages - 1], heights[spec.stages - 1]) >
        risk_threshold;
  } else {
    for (int k = 0; k < spec.stages; ++k) {
      BigInt total = 0;
      for (long long a : spec.spacers[k]) total += a;
      rep.last_sum += Rational(total, spec.cuts[k] * heights[k]);
    }
    rep.diverging_risk = false;
  }
  Rational w = 1;
  for (int k = 0; k < spec.stages; ++k) w /= spec.cuts[k];
  rep.total_mass = Rational(heights[spec.stages]) * w;
  return rep;
}

}  // namespace stacklab
