#pragma once

// Brute-force grid oracle for the interval-chain machinery. Independent of
// the chain implementation: membership of m/G is decided per grid point by
// direct defect checks in exact integer arithmetic.

#include <cstdint>
#include <vector>

#include "stacklab/spectral.hpp"

namespace stacklab::testing {

// ||n * (m/G)|| < eps, all integers. Requires den(eps) * G/2 to fit u64,
// which holds for the small test denominators used here.
inline bool defect_below(const BigInt& n, std::uint64_t m, std::uint64_t G,
                         const Rational& eps) {
  std::uint64_t nm = ((n % G).convert_to<std::uint64_t>() * m) % G;
  std::uint64_t d = nm < G - nm ? nm : G - nm;  // G * ||n m / G||
  return BigInt(d) * denominator(eps) < numerator(eps) * G;
}

// Oracle membership of every grid point m/G, m = 0..G-1, in
// {alpha : ||n_k alpha|| < eps for all k}.
inline std::vector<bool> grid_members(std::span<const BigInt> n_seq,
                                      const Rational& eps, std::uint64_t G) {
  std::vector<bool> out(G, true);
  for (std::uint64_t m = 0; m < G; ++m)
    for (const BigInt& n : n_seq)
      if (!defect_below(n, m, G, eps)) {
        out[m] = false;
        break;
      }
  return out;
}

// Grid points covered by the chain's survivor arcs (open intervals mod 1).
inline std::vector<bool> grid_from_survivors(const CandidateChain& chain,
                                             std::uint64_t G) {
  std::vector<bool> out(G, false);
  for (const ChainArc& arc : chain.survivors()) {
    for (int shift = -1; shift <= 1; ++shift) {
      Rational lo = arc.lo + shift, hi = arc.hi + shift;
      BigInt first = floor_rational(lo * G) + 1;
      BigInt last = ceil_rational(hi * G) - 1;
      if (first < 0) first = 0;
      if (last > BigInt(G) - 1) last = BigInt(G) - 1;
      for (BigInt m = first; m <= last; ++m)
        out[m.convert_to<std::uint64_t>()] = true;
    }
  }
  return out;
}

}  // namespace stacklab::testing
