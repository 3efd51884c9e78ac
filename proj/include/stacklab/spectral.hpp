#pragma once

#include <span>
#include <vector>

#include "stacklab/numeric.hpp"

namespace stacklab {

// ||x|| = distance from x to the nearest integer, in [0, 1/2].
Rational circle_norm(const Rational& x);

// ||n_k * alpha|| for each entry of the sequence.
std::vector<Rational> defect_sequence(const Rational& alpha,
                                      std::span<const BigInt> n_seq);

// One surviving arc in the chain: the B-arc identity (stage, grid index j)
// plus the running intersection (lo, hi), kept in the universal cover so
// arcs that straddle 0 need no wraparound splits. parent indexes the
// surviving arc of the previous refinement stage (-1 at the root stage).
struct ChainArc {
  BigInt grid_index;  // j: the arc is centered at j / n_k
  Rational lo, hi;    // open running intersection, hi - lo > 0
  int parent = -1;

  Rational center() const { return (lo + hi) / 2; }
  Rational half_width() const { return (hi - lo) / 2; }
  bool contains_zero() const;  // 0 mod 1 inside (lo, hi)
  bool contains(const Rational& alpha) const;  // alpha mod 1 inside, exact
};

// A^eps_{(n_k),L} truncated at the last available index: per-stage
// surviving arcs with parent links. levels[0] holds the n_{k0} root arcs.
struct CandidateChain {
  std::vector<BigInt> n_seq;  // full sequence handed in
  Rational eps;
  BigInt L;
  int start_index = 0;  // k0: smallest index with n_{k0} > L
  std::vector<std::vector<ChainArc>> levels;

  const std::vector<ChainArc>& survivors() const { return levels.back(); }
  std::size_t nontrivial_count(std::size_t level) const;
  // True iff alpha lies in some survivor arc at the given refinement level.
  bool member(const Rational& alpha, std::size_t level) const;
};

// Exact refinement of the arc families B^eps_{n_k} for k = k0..end, where
// k0 is the smallest index with n_{k0} > L. Arcs are open; all endpoint
// arithmetic is rational.
CandidateChain chain_intersect(std::span<const BigInt> n_seq,
                               const Rational& eps, const BigInt& L = 0);

struct BoundCheckReport {
  bool applicable = false;  // eps < 1/(4M) and ratios < M in the window
  bool pass = false;
  int violating_stage = -1;      // refinement level where nesting failed
  std::size_t survivor_count = 0;
  BigInt survivor_limit;         // n_{k0}
};

// Checks the one-parent / one-child nesting and the survivor-count bound
// |A| <= n_{k0}. Not applicable (not an error) when eps >= 1/(4M) or some
// window ratio reaches M.
BoundCheckReport cardinality_bound_check(const CandidateChain& chain,
                                         const Rational& ratio_bound);

struct GateResult {
  bool applicable = false;  // both defects were < eps
  Rational defect_n, defect_n1;
  Rational alpha_bound;  // ||alpha|| <= ||n a|| + ||(n+1) a|| < 2 eps
};

// Consecutive return times n, n+1: if both defects are < eps then
// ||alpha|| < 2 eps, since alpha = (n+1)alpha - n alpha on the circle.
GateResult chacon_gate(const Rational& alpha, const BigInt& n,
                       const Rational& eps);

struct Survivor {
  Rational center;      // normalized to [0, 1)
  Rational half_width;
  bool trivial = false;  // the arc containing 0
};

struct ScreenResult {
  std::vector<BigInt> window_sequence;
  CandidateChain chain;
  std::vector<Survivor> survivors;  // sorted by center
  std::size_t nontrivial = 0;       // survivors not containing 0
};

// Runs chain_intersect on entries [first, last] of the chosen candidate
// sequence. An empty nontrivial set is weak-mixing evidence at
// (eps, window); a nonempty one lists the remaining eigenvalue candidates.
ScreenResult eigenvalue_screen(std::span<const BigInt> sequence,
                               const Rational& eps, int first, int last);

}  // namespace stacklab
