#include "stacklab/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace stacklab {

namespace {

using nlohmann::json;

long long require_int(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw parameter_error("config: missing field '" + key + "'");
  if (!j[key].is_number_integer())
    throw parameter_error("config: field '" + key + "' must be an integer");
  return j[key].get<long long>();
}

std::vector<long long> require_int_array(const json& j, const std::string& key,
                                         int expected) {
  if (!j.contains(key))
    throw parameter_error("config: missing field '" + key + "'");
  if (!j[key].is_array())
    throw parameter_error("config: field '" + key + "' must be an array");
  std::vector<long long> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer())
      throw parameter_error("config: field '" + key +
                            "' must contain only integers");
    out.push_back(v.get<long long>());
  }
  if (expected >= 0 && static_cast<int>(out.size()) != expected)
    throw parameter_error("config: field '" + key + "' must have " +
                          std::to_string(expected) + " entries");
  return out;
}

Rational require_rational(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw parameter_error("config: missing field '" + key + "'");
  if (!j[key].is_string())
    throw parameter_error(key + " must be an exact rational num/den");
  try {
    return parse_rational(j[key].get<std::string>());
  } catch (const parameter_error&) {
    throw parameter_error(key + " must be an exact rational num/den");
  }
}

ConstructionSpec parse_spec(const json& j) {
  if (!j.is_object()) throw parameter_error("config: 'spec' must be an object");
  ConstructionSpec spec;
  std::string mode = j.value("mode", std::string("ornstein"));
  if (mode == "ornstein")
    spec.mode = SpacerMode::ornstein;
  else if (mode == "deterministic")
    spec.mode = SpacerMode::deterministic;
  else
    throw parameter_error("config: spec.mode must be 'ornstein' or 'deterministic'");
  spec.stages = static_cast<int>(require_int(j, "K"));
  std::vector<long long> p = require_int_array(j, "p", spec.stages);
  for (long long v : p) spec.cuts.push_back(static_cast<int>(v));
  if (spec.mode == SpacerMode::ornstein) {
    spec.spacer_range = require_int_array(j, "t", spec.stages);
    spec.last_spacer = require_int_array(j, "x_last", spec.stages);
  } else {
    if (!j.contains("spacers") || !j["spacers"].is_array())
      throw parameter_error("config: deterministic spec needs 'spacers' array");
    for (const auto& row : j["spacers"]) {
      std::vector<long long> a;
      for (const auto& v : row) {
        if (!v.is_number_integer())
          throw parameter_error("config: spacers must contain only integers");
        a.push_back(v.get<long long>());
      }
      spec.spacers.push_back(std::move(a));
    }
  }
  spec.validate();
  return spec;
}

json spec_to_json(const ConstructionSpec& spec) {
  json j;
  j["mode"] =
      spec.mode == SpacerMode::ornstein ? "ornstein" : "deterministic";
  j["K"] = spec.stages;
  j["p"] = spec.cuts;
  if (spec.mode == SpacerMode::ornstein) {
    j["t"] = spec.spacer_range;
    j["x_last"] = spec.last_spacer;
  } else {
    j["spacers"] = spec.spacers;
  }
  return j;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = experiment_name(c.experiment);
  j["spec"] = spec_to_json(c.spec);
  j["eps"] = format_rational(c.eps);
  j["window"] = {c.window_first, c.window_last};
  j["sequence"] = c.sequence == SequenceKind::criterion ? "criterion" : "frequency";
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  j["output_path"] = c.output_path;
  if (c.experiment == ExperimentKind::diagnose) {
    j["diagnose"] = {{"eval_stage", c.eval_stage},
                     {"level_stage", c.level_stage},
                     {"levels", c.levels},
                     {"shifts", c.shifts},
                     {"cesaro_horizon", c.cesaro_horizon}};
  }
  return j;
}

void resolve_window(ExperimentConfig& c) {
  if (c.window_last < 0) c.window_last = c.spec.stages - 1;
  if (c.window_first < 0 || c.window_first > c.window_last ||
      c.window_last > c.spec.stages - 1)
    throw parameter_error("config: window must satisfy 0 <= first <= last <= K-1");
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::build: return "build";
    case ExperimentKind::sample: return "sample";
    case ExperimentKind::screen: return "screen";
    case ExperimentKind::diagnose: return "diagnose";
    case ExperimentKind::montecarlo: return "montecarlo";
    case ExperimentKind::chacon_scan: return "chacon-scan";
  }
  throw parameter_error("unknown experiment kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "build") return ExperimentKind::build;
  if (name == "sample") return ExperimentKind::sample;
  if (name == "screen") return ExperimentKind::screen;
  if (name == "diagnose") return ExperimentKind::diagnose;
  if (name == "montecarlo") return ExperimentKind::montecarlo;
  if (name == "chacon-scan") return ExperimentKind::chacon_scan;
  throw parameter_error("config: unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    throw parameter_error("config: invalid JSON: " + msg);
  }
  if (!j.is_object()) throw parameter_error("config: document must be an object");

  static const std::vector<std::string> known = {
      "experiment", "spec",   "eps",         "window",      "sequence",
      "trials",     "master_seed", "output_path", "diagnose"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw parameter_error("config: unknown field '" + item.key() + "'");

  ExperimentConfig c;
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw parameter_error("config: missing 'experiment' name");
  c.experiment = experiment_from_name(j["experiment"].get<std::string>());
  if (!j.contains("spec")) throw parameter_error("config: missing 'spec'");
  c.spec = parse_spec(j["spec"]);
  if (j.contains("eps")) c.eps = require_rational(j, "eps");
  if (j.contains("window")) {
    std::vector<long long> w = require_int_array(j, "window", 2);
    c.window_first = static_cast<int>(w[0]);
    c.window_last = static_cast<int>(w[1]);
  }
  if (j.contains("sequence")) {
    std::string s = j["sequence"].get<std::string>();
    if (s == "criterion")
      c.sequence = SequenceKind::criterion;
    else if (s == "frequency")
      c.sequence = SequenceKind::frequency;
    else
      throw parameter_error("config: sequence must be 'criterion' or 'frequency'");
  }
  if (j.contains("trials")) c.trials = static_cast<int>(require_int(j, "trials"));
  if (j.contains("master_seed")) {
    if (!j["master_seed"].is_number_unsigned() &&
        !j["master_seed"].is_number_integer())
      throw parameter_error("config: master_seed must be an integer");
    c.master_seed = j["master_seed"].get<std::uint64_t>();
  }
  if (j.contains("output_path"))
    c.output_path = j["output_path"].get<std::string>();
  if (j.contains("diagnose")) {
    const json& d = j["diagnose"];
    if (d.contains("eval_stage"))
      c.eval_stage = static_cast<int>(require_int(d, "eval_stage"));
    if (d.contains("level_stage"))
      c.level_stage = static_cast<int>(require_int(d, "level_stage"));
    if (d.contains("levels"))
      for (long long v : require_int_array(d, "levels", -1))
        c.levels.push_back(static_cast<std::uint64_t>(v));
    if (d.contains("shifts"))
      for (long long v : require_int_array(d, "shifts", -1))
        c.shifts.push_back(static_cast<std::uint64_t>(v));
    if (d.contains("cesaro_horizon"))
      c.cesaro_horizon =
          static_cast<std::uint64_t>(require_int(d, "cesaro_horizon"));
  }

  if (c.experiment != ExperimentKind::build &&
      c.experiment != ExperimentKind::diagnose) {
    if (c.spec.mode != SpacerMode::ornstein &&
        c.experiment != ExperimentKind::screen)
      throw parameter_error("config: experiment '" +
                            experiment_name(c.experiment) +
                            "' requires an ornstein spec");
  }
  if (c.trials < 1) throw parameter_error("config: trials must be >= 1");
  return c;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

namespace {

struct Emitter {
  std::filesystem::path dir;
  std::map<std::string, std::string> hashes;

  void write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw parameter_error("cannot write output file " + name);
    out << content;
    hashes[name] = fnv1a_hex(content);
  }
};

MonteCarloSummary run_trials(const ExperimentConfig& config, bool with_screen) {
  if (config.spec.mode != SpacerMode::ornstein)
    throw parameter_error("montecarlo: spec must be in ornstein mode");
  MonteCarloSummary summary;
  summary.trials = config.trials;
  std::vector<BigInt> heights = ornstein_heights(config.spec);
  std::vector<std::uint64_t> seeds =
      trial_seeds(config.master_seed, config.trials);
  int wf = config.window_first, wl = config.window_last;
  int ends = wl - wf + 1;
  std::vector<long long> empty_by_end(ends, 0);
  long long empty = 0, with_pattern = 0;
  for (int i = 0; i < config.trials; ++i) {
    TrialRow row;
    row.trial = i;
    row.seed = seeds[i];
    OmegaDraw draw = sample_omega(config.spec, seeds[i]);
    std::vector<SpacerStage> spacers = omega_spacers(config.spec, draw);
    row.pattern_stages = chacon_pattern_scan(spacers).size();
    if (row.pattern_stages > 0) ++with_pattern;
    if (with_screen) {
      std::vector<BigInt> seq =
          screen_sequence(config.sequence, heights, spacers, &draw);
      ScreenResult res = eigenvalue_screen(seq, config.eps, wf, wl);
      row.survivors_by_end.resize(ends);
      for (int e = 0; e < ends; ++e) {
        row.survivors_by_end[e] = res.chain.nontrivial_count(e);
        if (row.survivors_by_end[e] == 0) ++empty_by_end[e];
      }
      row.nontrivial_survivors = res.nontrivial;
      if (row.nontrivial_survivors == 0) ++empty;
    }
    summary.rows.push_back(std::move(row));
  }
  summary.fraction_empty = Rational(empty, config.trials);
  summary.fraction_with_pattern = Rational(with_pattern, config.trials);
  if (with_screen)
    for (int e = 0; e < ends; ++e)
      summary.fraction_empty_by_end.push_back(
          Rational(empty_by_end[e], config.trials));
  return summary;
}

std::string montecarlo_csv(const MonteCarloSummary& summary) {
  std::ostringstream os;
  os << "trial,seed,nontrivial_survivors,pattern_stages\n";
  for (const TrialRow& row : summary.rows)
    os << row.trial << "," << row.seed << "," << row.nontrivial_survivors
       << "," << row.pattern_stages << "\n";
  return os.str();
}

std::string survivors_csv(const std::vector<Survivor>& survivors) {
  std::ostringstream os;
  os << "center_numerator,center_denominator,halfwidth_numerator,"
        "halfwidth_denominator\n";
  for (const Survivor& s : survivors)
    os << numerator(s.center) << "," << denominator(s.center) << ","
       << numerator(s.half_width) << "," << denominator(s.half_width) << "\n";
  return os.str();
}

std::string heights_csv(const ConstructionSpec& spec,
                        std::span<const BigInt> heights,
                        std::span<const Rational> widths) {
  std::ostringstream os;
  os << "k,height,width_num,width_den\n";
  for (int k = 0; k <= spec.stages; ++k)
    os << k << "," << heights[k] << "," << numerator(widths[k]) << ","
       << denominator(widths[k]) << "\n";
  return os.str();
}

std::string draws_text(const OmegaDraw& draw) {
  std::ostringstream os;
  for (const auto& row : draw.draws) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ' ';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

// The construction behind screen/diagnose: deterministic specs use their
// explicit spacers, ornstein specs sample one omega from the master seed.
std::vector<SpacerStage> resolve_spacers(const ExperimentConfig& config,
                                         std::optional<OmegaDraw>& draw) {
  if (config.spec.mode == SpacerMode::deterministic)
    return deterministic_spacers(config.spec);
  draw = sample_omega(config.spec, config.master_seed);
  return omega_spacers(config.spec, *draw);
}

}  // namespace

MonteCarloSummary montecarlo_wmix(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  resolve_window(c);
  return run_trials(c, true);
}

MonteCarloSummary montecarlo_chacon(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  resolve_window(c);
  return run_trials(c, false);
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.spec.validate();
  resolve_window(c);
  Emitter emit{c.output_path, {}};
  json aggregates;

  switch (c.experiment) {
    case ExperimentKind::build: {
      std::vector<SpacerStage> spacers;
      std::optional<OmegaDraw> draw;
      spacers = resolve_spacers(c, draw);
      Tower tower = build_tower(c.spec, spacers);
      emit.write("heights.csv", heights_csv(c.spec, tower.heights, tower.widths));
      MassReport mass = mass_report(c.spec, tower.heights);
      aggregates["spacer_sum"] = format_rational(mass.spacer_sum);
      aggregates["last_sum"] = format_rational(mass.last_sum);
      aggregates["total_mass"] = format_rational(mass.total_mass);
      aggregates["diverging_risk"] = mass.diverging_risk;
      break;
    }
    case ExperimentKind::sample: {
      OmegaDraw draw = sample_omega(c.spec, c.master_seed);
      emit.write("draws.txt", draws_text(draw));
      break;
    }
    case ExperimentKind::screen: {
      std::optional<OmegaDraw> draw;
      std::vector<SpacerStage> spacers = resolve_spacers(c, draw);
      std::vector<BigInt> heights = height_sequence(c.spec, spacers);
      std::vector<BigInt> seq = screen_sequence(
          c.sequence, heights, spacers, draw ? &*draw : nullptr);
      ScreenResult res =
          eigenvalue_screen(seq, c.eps, c.window_first, c.window_last);
      emit.write("survivors.csv", survivors_csv(res.survivors));
      aggregates["survivors"] = res.survivors.size();
      aggregates["nontrivial_survivors"] = res.nontrivial;
      aggregates["weak_mixing_evidence"] = res.nontrivial == 0;
      break;
    }
    case ExperimentKind::diagnose: {
      std::optional<OmegaDraw> draw;
      std::vector<SpacerStage> spacers = resolve_spacers(c, draw);
      Tower tower = build_tower(c.spec, spacers);
      int K = c.eval_stage < 0 ? c.spec.stages : c.eval_stage;
      if (K < 1 || K > c.spec.stages)
        throw parameter_error("config: eval_stage out of range");
      if (c.level_stage < 0 || c.level_stage > K)
        throw parameter_error("config: level_stage out of range");
      LevelSet A;
      if (c.levels.empty()) {
        A = LevelSet::full(
            c.level_stage,
            tower.heights[c.level_stage].convert_to<std::uint64_t>());
      } else {
        A.stage = c.level_stage;
        A.members = c.levels;
      }
      BitVector lift = lift_level_set(A, K, tower);
      Rational muA = A.measure(tower);
      std::ostringstream os;
      os << "n,value_num,value_den,err_num,err_den,normalized\n";
      for (std::uint64_t n : c.shifts) {
        CorrelationReport rep =
            correlation_lifted(lift, lift, muA, muA, n, K, tower);
        os << n << "," << numerator(rep.value) << "," << denominator(rep.value)
           << "," << numerator(rep.error_bound) << ","
           << denominator(rep.error_bound) << ","
           << decimal_string(rep.normalized, 12) << "\n";
      }
      emit.write("correlations.csv", os.str());
      aggregates["mu_A"] = format_rational(muA);
      if (c.cesaro_horizon > 0) {
        CesaroScore score = cesaro_score(A, A, c.cesaro_horizon, K, tower);
        aggregates["cesaro_score"] = format_rational(score.score);
        aggregates["cesaro_error"] = format_rational(score.error_bound);
      }
      break;
    }
    case ExperimentKind::montecarlo: {
      MonteCarloSummary summary = run_trials(c, true);
      emit.write("montecarlo.csv", montecarlo_csv(summary));
      aggregates["fraction_empty"] = format_rational(summary.fraction_empty);
      aggregates["fraction_with_pattern"] =
          format_rational(summary.fraction_with_pattern);
      json by_end = json::object();
      for (std::size_t e = 0; e < summary.fraction_empty_by_end.size(); ++e)
        by_end[std::to_string(c.window_first + static_cast<int>(e))] =
            format_rational(summary.fraction_empty_by_end[e]);
      aggregates["fraction_empty_by_end"] = by_end;
      break;
    }
    case ExperimentKind::chacon_scan: {
      MonteCarloSummary summary = run_trials(c, false);
      emit.write("montecarlo.csv", montecarlo_csv(summary));
      aggregates["fraction_with_pattern"] =
          format_rational(summary.fraction_with_pattern);
      break;
    }
  }

  json manifest;
  manifest["config"] = config_to_json(c);
  manifest["aggregates"] = aggregates;
  json files = json::object();
  for (const auto& [name, hash] : emit.hashes) files[name] = hash;
  manifest["files"] = files;
  std::string manifest_text = manifest.dump(2) + "\n";
  {
    std::ofstream out(emit.dir / "manifest.json", std::ios::binary);
    if (!out) throw parameter_error("cannot write manifest.json");
    out << manifest_text;
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [name, hash] : emit.hashes) written.push_back(emit.dir / name);
  written.push_back(emit.dir / "manifest.json");
  return written;
}

}  // namespace stacklab
