#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stacklab/construction.hpp"

namespace stacklab {

// Append-only packed indicator over [0, size). Lifting a level set one
// stage is a sequence of block appends, so the vector is built by
// concatenation rather than random writes.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::uint64_t size);  // zero-initialized

  std::uint64_t size() const { return size_; }
  bool test(std::uint64_t i) const;
  void set(std::uint64_t i);
  void append_zeros(std::uint64_t count);
  void append(const BitVector& other);
  std::uint64_t count() const;

  // sum over l in [0, size-n) of this[l] & other[l+n]; other must have the
  // same size. This is the AND-shift-popcount correlation kernel.
  std::uint64_t shifted_and_count(const BitVector& other, std::uint64_t n) const;

 private:
  std::uint64_t word_at(std::uint64_t bit) const;  // 64 bits starting at `bit`

  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

// Set of levels of the stage-k tower. Levels index [0, h_k); measure is
// |members| * w_k exactly.
struct LevelSet {
  int stage = 0;
  std::vector<std::uint64_t> members;

  static LevelSet full(int stage, std::uint64_t height);
  Rational measure(const Tower& tower) const;
};

// Indicator over [0, h_K) of the positions whose decode chain reaches a
// member level of A at stage k; spacer positions added at stages >= k are
// never in the lift. Lifted measure equals mu(A) exactly.
BitVector lift_level_set(const LevelSet& set, int K, const Tower& tower);

struct CorrelationReport {
  std::uint64_t shift = 0;  // n
  int stage = 0;            // K
  Rational value;           // w_K * overlap count
  Rational error_bound;     // n * w_K
  Rational normalized;      // value / (mu(A) mu(B))
};

// value = w_K * #{l : l + n < h_K, l in lift(B), l + n in lift(A)}.
// Within the stage-K tower T shifts levels up by one except at the top,
// so |mu(T^n A cap B) - value| <= n * w_K.
CorrelationReport correlation(const LevelSet& A, const LevelSet& B,
                              std::uint64_t n, int K, const Tower& tower);

// Same contract, on pre-lifted indicators (for scans over many shifts).
CorrelationReport correlation_lifted(const BitVector& liftA,
                                     const BitVector& liftB,
                                     const Rational& muA, const Rational& muB,
                                     std::uint64_t n, int K, const Tower& tower);

struct RigidityHit {
  std::uint64_t shift = 0;
  Rational normalized_overlap;  // value / mu(A)
};

// Flags shifts whose self-correlation clears the threshold conservatively:
// value - n w_K >= threshold * mu(A).
std::vector<RigidityHit> rigidity_scan(const LevelSet& A,
                                       std::span<const std::uint64_t> shifts,
                                       int K, const Rational& alpha_threshold,
                                       const Tower& tower);

struct CesaroScore {
  Rational score;        // (1/N) sum_{n=1..N} |corr(n).value - mu(A)mu(B)|
  Rational error_bound;  // (1/N) sum_{n=1..N} n w_K
};

CesaroScore cesaro_score(const LevelSet& A, const LevelSet& B, std::uint64_t N,
                         int K, const Tower& tower);

}  // namespace stacklab
