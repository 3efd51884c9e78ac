// Acceptance suite: one pass/fail line per criterion, exit nonzero if any
// criterion fails. Tolerances are pinned here, in code.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "../grid_oracle.hpp"
#include "../test_support.hpp"
#include "stacklab/experiment.hpp"

using namespace stacklab;
using stacklab::testing::TestRng;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string label)
      : number_(number), label_(std::move(label)),
        start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& detail) {
    if (!ok && failure_.empty()) failure_ = detail;
  }

  ~Criterion() {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    if (failure_.empty()) {
      std::cout << "[PASS] criterion " << number_ << ": " << label_ << " ("
                << elapsed << " ms)\n";
    } else {
      ++g_failures;
      std::cout << "[FAIL] criterion " << number_ << ": " << label_ << " — "
                << failure_ << " (" << elapsed << " ms)\n";
    }
  }

 private:
  int number_;
  std::string label_;
  std::string failure_;
  std::chrono::steady_clock::time_point start_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ConstructionSpec quadratic_spec(int rows) {
  ConstructionSpec spec;
  spec.mode = SpacerMode::ornstein;
  spec.stages = rows;
  for (int k = 0; k < rows; ++k) {
    spec.cuts.push_back(4);
    spec.spacer_range.push_back(static_cast<long long>(k) * k);
    spec.last_spacer.push_back(0);
  }
  return spec;
}

// --- criterion 1: exact identities -----------------------------------------

void criterion_1() {
  Criterion c(1, "exact identities (telescoping, dual recursion, measure "
                 "preservation)");
  TestRng rng(101);
  for (int iter = 0; iter < 1000; ++iter) {
    long long t = rng.range(0, 60);
    int p = static_cast<int>(rng.range(2, 9));
    long long x_last = rng.range(0, 40);
    std::vector<long long> draws;
    for (int i = 0; i < p - 1; ++i) draws.push_back(rng.range(-t, t));
    SpacerStage st = ornstein_spacers(0, t, p, draws, x_last);
    c.require(st.total() == 2 * t * p + x_last,
              "telescoping sum failed at iteration " + std::to_string(iter));
    for (int j = 0; j < p; ++j)
      c.require(st.counts[j] >= 0, "negative spacer count");
  }

  TestRng rng2(102);
  for (int iter = 0; iter < 100; ++iter) {
    ConstructionSpec spec = testing::random_ornstein_spec(rng2, 20);
    auto closed = ornstein_heights(spec);
    auto spacers = omega_spacers(spec, sample_omega(spec, rng2.next()));
    c.require(closed == height_sequence(spec, spacers),
              "height recursions disagree at iteration " + std::to_string(iter));
  }

  TestRng rng3(103);
  int done = 0;
  while (done < 50) {
    ConstructionSpec spec = testing::random_ornstein_spec(rng3, 6, 4);
    auto spacers = omega_spacers(spec, sample_omega(spec, rng3.next()));
    Tower tower = build_tower(spec, spacers);
    int K = spec.stages;
    if (tower.heights[K] > 300000) continue;
    std::uint64_t h = tower.heights[K].convert_to<std::uint64_t>();
    LevelSet X = LevelSet::full(K, h);
    std::uint64_t n = static_cast<std::uint64_t>(rng3.range(0, h - 1));
    CorrelationReport rep = correlation(X, X, n, K, tower);
    c.require(rep.value == Rational(tower.heights[K] - n) * tower.widths[K],
              "measure preservation failed at pair " + std::to_string(done));
    ++done;
  }
}

// --- criterion 2: Lemma 4.1 bound against the grid oracle ------------------

void criterion_2() {
  Criterion c(2, "interval-chain cardinality bound and 1e5-point grid oracle");
  TestRng rng(201);
  const std::uint64_t G = 100000;
  for (int iter = 0; iter < 100; ++iter) {
    long long M = rng.range(2, 6);
    std::vector<BigInt> n;
    n.push_back(rng.range(3, 40));
    int len = static_cast<int>(rng.range(4, 8));
    while (static_cast<int>(n.size()) < len) {
      long long prev = n.back().convert_to<long long>();
      long long hi = prev * M - 1;
      n.push_back(rng.range(prev + 1, hi < prev + 1 ? prev + 1 : hi));
    }
    Rational eps(1, rng.range(4 * M + 1, 16 * M));
    CandidateChain chain = chain_intersect(n, eps, 0);
    BoundCheckReport rep = cardinality_bound_check(chain, Rational(M));
    c.require(rep.applicable, "lemma hypothesis unexpectedly violated");
    c.require(rep.pass, "nesting or survivor bound failed at iteration " +
                            std::to_string(iter));
    c.require(BigInt(rep.survivor_count) <= rep.survivor_limit,
              "survivor count exceeds n_k0");
    std::vector<bool> oracle = testing::grid_members(n, eps, G);
    std::vector<bool> from_chain = testing::grid_from_survivors(chain, G);
    for (std::uint64_t m = 0; m < G; ++m)
      if (oracle[m] != from_chain[m]) {
        c.require(false, "grid discrepancy at m=" + std::to_string(m) +
                             " iteration " + std::to_string(iter));
        return;
      }
  }
}

// --- criterion 3: Chacon gate soundness on the exhaustive grid --------------

void criterion_3() {
  Criterion c(3, "gate soundness: ||alpha|| >= 2 eps never passes n and n+1");
  const std::uint64_t G = 10000;
  for (long long nv : {10, 50, 200}) {
    BigInt n(nv);
    for (const Rational& eps : {Rational(1, 100), Rational(1, 500)}) {
      for (std::uint64_t m = 0; m < G; ++m) {
        Rational alpha(m, G);
        if (circle_norm(alpha) < 2 * eps) continue;
        bool pass_n = circle_norm(Rational(n) * alpha) < eps;
        bool pass_n1 = circle_norm(Rational(n + 1) * alpha) < eps;
        if (pass_n && pass_n1) {
          c.require(false, "violation at m=" + std::to_string(m) + ", n=" +
                               std::to_string(nv));
          return;
        }
      }
    }
  }
}

// --- criterion 4: Chacon reproduction ---------------------------------------

void criterion_4() {
  Criterion c(4, "Chacon: rigid along h_1 at K=7 and empty nontrivial screen");
  ConstructionSpec spec = testing::chacon_spec(7);
  auto spacers = deterministic_spacers(spec);
  Tower tower = build_tower(spec, spacers);
  LevelSet A = LevelSet::full(1, 4);
  CorrelationReport rep = correlation(A, A, 4, 7, tower);
  Rational muA = A.measure(tower);
  c.require((rep.value - rep.error_bound) / (muA * muA) >= Rational(3, 5),
            "normalized correlation below 0.6 after the error bound");
  c.require(rep.value == Rational(2548, 2187), "frozen overlap value drifted");

  auto seq = screen_sequence(SequenceKind::criterion, tower.heights, spacers,
                             nullptr);
  for (int last : {1, 6}) {  // window lengths 2 and 7
    ScreenResult res = eigenvalue_screen(seq, Rational(1, 5), 0, last);
    c.require(res.nontrivial == 0,
              "nontrivial survivors in window [0," + std::to_string(last) + "]");
    c.require(res.survivors.size() == 1, "trivial arc missing");
  }
}

// --- criterion 5: odometer negative control ---------------------------------

void criterion_5() {
  Criterion c(5, "odometer control: exactly 2^k1 dyadic survivors, no "
                 "weak-mixing evidence");
  ConstructionSpec spec = testing::odometer_spec(10, 2);
  auto spacers = omega_spacers(spec, sample_omega(spec, 1));
  auto heights = ornstein_heights(spec);
  auto seq = screen_sequence(SequenceKind::criterion, heights, spacers, nullptr);
  for (int k1 : {1, 3, 5}) {
    ScreenResult res = eigenvalue_screen(seq, Rational(1, 5), k1, 9);
    c.require(res.survivors.size() == (1u << k1),
              "survivor count != 2^" + std::to_string(k1));
    for (std::size_t j = 0; j < res.survivors.size(); ++j)
      c.require(res.survivors[j].center == Rational(j, 1u << k1),
                "survivor centers are not the dyadic grid");
    c.require(res.nontrivial == (1u << k1) - 1,
              "screen reported weak-mixing evidence for the odometer");
  }
}

// --- criterion 6: Monte Carlo trend ------------------------------------------

void criterion_6() {
  Criterion c(6, "Monte Carlo: fraction_empty >= 0.95 and monotone in the "
                 "window end (200 trials)");
  ExperimentConfig config;
  config.experiment = ExperimentKind::montecarlo;
  config.spec = quadratic_spec(13);  // rows 0..12 so the window can end at 12
  config.eps = Rational(1, 50);
  config.window_first = 0;
  config.window_last = 12;
  config.trials = 200;
  config.master_seed = 1;
  MonteCarloSummary summary = montecarlo_wmix(config);
  c.require(summary.fraction_empty >= Rational(19, 20),
            "fraction_empty below 0.95");
  Rational prev = 0;
  for (int e = 8; e <= 12; ++e) {
    const Rational& f = summary.fraction_empty_by_end[e];
    c.require(f >= prev, "fraction_empty decreased at window end " +
                             std::to_string(e));
    prev = f;
  }
  // golden regression, frozen after the first verified run
  for (int e = 8; e <= 12; ++e)
    c.require(summary.fraction_empty_by_end[e] == 1,
              "frozen fraction_empty regression drifted at end " +
                  std::to_string(e));
}

// --- criterion 7: pattern scan in both regimes -------------------------------

void criterion_7() {
  Criterion c(7, "divergent-regime pattern scan >= 0.99, convergent strictly "
                 "lower (200 trials)");
  ExperimentConfig div;
  div.experiment = ExperimentKind::chacon_scan;
  div.spec.mode = SpacerMode::ornstein;
  div.spec.stages = 50;
  div.spec.cuts.assign(50, 4);
  div.spec.spacer_range.assign(50, 2);
  div.spec.spacer_range[0] = 0;  // 2 t_0 <= h_0 = 1 forces t_0 = 0
  div.spec.last_spacer.assign(50, 0);
  div.trials = 200;
  div.master_seed = 1;
  MonteCarloSummary divergent = montecarlo_chacon(div);
  c.require(divergent.fraction_with_pattern >= Rational(99, 100),
            "divergent-regime fraction below 0.99");

  ExperimentConfig conv;
  conv.experiment = ExperimentKind::chacon_scan;
  conv.spec.mode = SpacerMode::ornstein;
  conv.spec.stages = 30;
  conv.spec.cuts.assign(30, 4);
  conv.spec.last_spacer.assign(30, 0);
  conv.spec.spacer_range.assign(30, 0);
  for (int k = 1; k < 30; ++k)
    conv.spec.spacer_range[k] = 1LL << k;  // t_k = 2^k, summable 1/t_k
  conv.trials = 200;
  conv.master_seed = 1;
  MonteCarloSummary convergent = montecarlo_chacon(conv);
  c.require(convergent.fraction_with_pattern < divergent.fraction_with_pattern,
            "convergent regime not strictly lower");
  // golden regressions, frozen after the first verified run
  c.require(divergent.fraction_with_pattern == 1,
            "frozen divergent fraction drifted");
  c.require(convergent.fraction_with_pattern == Rational(81, 200),
            "frozen convergent fraction drifted");
}

// --- criterion 8: byte-identical reruns --------------------------------------

void criterion_8() {
  Criterion c(8, "determinism: reruns of criteria 6-7 are byte-identical");
  fs::path base = fs::temp_directory_path() / "stacklab_acceptance";
  fs::remove_all(base);

  auto run_pair = [&](ExperimentKind kind, const ConstructionSpec& spec,
                      int window_last, const std::string& tag) {
    ExperimentConfig config;
    config.experiment = kind;
    config.spec = spec;
    config.eps = Rational(1, 50);
    config.window_first = 0;
    config.window_last = window_last;
    config.trials = 200;
    config.master_seed = 1;
    std::string csv[2], manifest[2];
    for (int r = 0; r < 2; ++r) {
      config.output_path = (base / (tag + "_" + std::to_string(r))).string();
      run_experiment(config);
      csv[r] = read_file(fs::path(config.output_path) / "montecarlo.csv");
      manifest[r] = read_file(fs::path(config.output_path) / "manifest.json");
    }
    c.require(!csv[0].empty(), tag + ": empty CSV");
    c.require(csv[0] == csv[1], tag + ": CSVs differ between reruns");
    // manifests identical except output_path; compare hashes via CSV equality
    c.require(fnv1a_hex(csv[0]) == fnv1a_hex(csv[1]),
              tag + ": manifest hashes differ");
    std::string h = fnv1a_hex(csv[0]);
    c.require(manifest[0].find(h) != std::string::npos,
              tag + ": manifest does not record the content hash");
    c.require(manifest[1].find(h) != std::string::npos,
              tag + ": rerun manifest does not record the content hash");
  };

  run_pair(ExperimentKind::montecarlo, quadratic_spec(13), 12, "mc");

  ConstructionSpec scan;
  scan.mode = SpacerMode::ornstein;
  scan.stages = 50;
  scan.cuts.assign(50, 4);
  scan.spacer_range.assign(50, 2);
  scan.spacer_range[0] = 0;
  scan.last_spacer.assign(50, 0);
  run_pair(ExperimentKind::chacon_scan, scan, 49, "scan");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
