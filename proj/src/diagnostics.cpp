#include "stacklab/diagnostics.hpp"

#include <algorithm>
#include <bit>

namespace stacklab {

BitVector::BitVector(std::uint64_t size) : size_(size) {
  words_.assign((size + 63) / 64, 0);
}

bool BitVector::test(std::uint64_t i) const {
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void BitVector::set(std::uint64_t i) { words_[i / 64] |= 1ULL << (i % 64); }

void BitVector::append_zeros(std::uint64_t count) {
  size_ += count;
  words_.resize((size_ + 63) / 64, 0);
}

void BitVector::append(const BitVector& other) {
  std::uint64_t shift = size_ % 64;
  size_ += other.size_;
  words_.reserve((size_ + 63) / 64);
  for (std::uint64_t w : other.words_) {
    if (shift == 0) {
      words_.push_back(w);
    } else {
      words_.back() |= w << shift;
      words_.push_back(w >> (64 - shift));
    }
  }
  words_.resize((size_ + 63) / 64);
  // clear any stale bits beyond size_
  if (size_ % 64 != 0)
    words_.back() &= (1ULL << (size_ % 64)) - 1;
}

std::uint64_t BitVector::count() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

std::uint64_t BitVector::word_at(std::uint64_t bit) const {
  std::uint64_t wi = bit / 64, r = bit % 64;
  std::uint64_t lo = wi < words_.size() ? words_[wi] : 0;
  if (r == 0) return lo;
  std::uint64_t hi = wi + 1 < words_.size() ? words_[wi + 1] : 0;
  return (lo >> r) | (hi << (64 - r));
}

std::uint64_t BitVector::shifted_and_count(const BitVector& other,
                                           std::uint64_t n) const {
  if (other.size_ != size_)
    throw parameter_error("shifted_and_count: size mismatch");
  if (n >= size_) return 0;
  std::uint64_t limit = size_ - n;  // l ranges over [0, limit)
  std::uint64_t c = 0;
  for (std::uint64_t base = 0; base < limit; base += 64) {
    std::uint64_t w = words_[base / 64] & other.word_at(base + n);
    std::uint64_t remain = limit - base;
    if (remain < 64) w &= (1ULL << remain) - 1;
    c += std::popcount(w);
  }
  return c;
}

LevelSet LevelSet::full(int stage, std::uint64_t height) {
  LevelSet s;
  s.stage = stage;
  s.members.resize(height);
  for (std::uint64_t i = 0; i < height; ++i) s.members[i] = i;
  return s;
}

Rational LevelSet::measure(const Tower& tower) const {
  return Rational(members.size()) * tower.widths.at(stage);
}

namespace {

std::uint64_t checked_height(const BigInt& h, const char* who) {
  if (h > BigInt(1) << 40)
    throw parameter_error(std::string(who) +
                          ": stage height too large for level indicators");
  return h.convert_to<std::uint64_t>();
}

}  // namespace

BitVector lift_level_set(const LevelSet& set, int K, const Tower& tower) {
  if (K < set.stage) throw parameter_error("lift_level_set: K < stage of A");
  if (set.stage < 0 || K > tower.spec.stages)
    throw parameter_error("lift_level_set: stage out of range");
  std::uint64_t h = checked_height(tower.heights[set.stage], "lift_level_set");
  BitVector ind(h);
  for (std::uint64_t level : set.members) {
    if (level >= h) throw parameter_error("lift_level_set: level out of range");
    ind.set(level);
  }
  for (int k = set.stage; k < K; ++k) {
    checked_height(tower.heights[k + 1], "lift_level_set");
    const SpacerStage& sp = tower.stages[k].spacers;
    BitVector next;
    for (long long a : sp.counts) {
      next.append(ind);
      next.append_zeros(static_cast<std::uint64_t>(a));
    }
    ind = std::move(next);
  }
  return ind;
}

CorrelationReport correlation_lifted(const BitVector& liftA,
                                     const BitVector& liftB,
                                     const Rational& muA, const Rational& muB,
                                     std::uint64_t n, int K,
                                     const Tower& tower) {
  if (BigInt(n) >= tower.heights[K])
    throw parameter_error("correlation: shift exceeds tower height");
  CorrelationReport rep;
  rep.shift = n;
  rep.stage = K;
  const Rational& wK = tower.widths[K];
  rep.value = Rational(liftB.shifted_and_count(liftA, n)) * wK;
  rep.error_bound = Rational(n) * wK;
  Rational denom = muA * muB;
  rep.normalized = denom == 0 ? Rational(0) : rep.value / denom;
  return rep;
}

CorrelationReport correlation(const LevelSet& A, const LevelSet& B,
                              std::uint64_t n, int K, const Tower& tower) {
  BitVector la = lift_level_set(A, K, tower);
  BitVector lb = lift_level_set(B, K, tower);
  return correlation_lifted(la, lb, A.measure(tower), B.measure(tower), n, K,
                            tower);
}

std::vector<RigidityHit> rigidity_scan(const LevelSet& A,
                                       std::span<const std::uint64_t> shifts,
                                       int K, const Rational& alpha_threshold,
                                       const Tower& tower) {
  BitVector lift = lift_level_set(A, K, tower);
  Rational muA = A.measure(tower);
  std::vector<RigidityHit> hits;
  for (std::uint64_t n : shifts) {
    CorrelationReport rep = correlation_lifted(lift, lift, muA, muA, n, K, tower);
    if (rep.value - rep.error_bound >= alpha_threshold * muA)
      hits.push_back(RigidityHit{n, rep.value / muA});
  }
  return hits;
}

CesaroScore cesaro_score(const LevelSet& A, const LevelSet& B, std::uint64_t N,
                         int K, const Tower& tower) {
  if (BigInt(N) >= tower.heights[K])
    throw parameter_error("cesaro_score: horizon exceeds tower height");
  if (N == 0) throw parameter_error("cesaro_score: horizon must be >= 1");
  BitVector la = lift_level_set(A, K, tower);
  BitVector lb = lift_level_set(B, K, tower);
  Rational muA = A.measure(tower), muB = B.measure(tower);
  Rational product = muA * muB;
  Rational acc = 0, err = 0;
  const Rational& wK = tower.widths[K];
  for (std::uint64_t n = 1; n <= N; ++n) {
    Rational value = Rational(lb.shifted_and_count(la, n)) * wK;
    Rational dev = value - product;
    acc += dev < 0 ? Rational(-dev) : dev;
    err += Rational(n) * wK;
  }
  return CesaroScore{acc / Rational(N), err / Rational(N)};
}

}  // namespace stacklab
