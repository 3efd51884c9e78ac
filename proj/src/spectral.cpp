#include "stacklab/spectral.hpp"

#include <algorithm>

namespace stacklab {

Rational circle_norm(const Rational& x) {
  Rational f = mod_one(x);
  return std::min(f, Rational(1) - f);
}

std::vector<Rational> defect_sequence(const Rational& alpha,
                                      std::span<const BigInt> n_seq) {
  std::vector<Rational> out;
  out.reserve(n_seq.size());
  for (const BigInt& n : n_seq) out.push_back(circle_norm(Rational(n) * alpha));
  return out;
}

bool ChainArc::contains_zero() const {
  // intervals live in (-1, 2); 0 mod 1 means 0 or 1
  return (lo < 0 && 0 < hi) || (lo < 1 && 1 < hi);
}

bool ChainArc::contains(const Rational& alpha) const {
  Rational a = mod_one(alpha);
  return (lo < a && a < hi) || (lo < a - 1 && a - 1 < hi) ||
         (lo < a + 1 && a + 1 < hi);
}

std::size_t CandidateChain::nontrivial_count(std::size_t level) const {
  std::size_t c = 0;
  for (const ChainArc& arc : levels.at(level))
    if (!arc.contains_zero()) ++c;
  return c;
}

bool CandidateChain::member(const Rational& alpha, std::size_t level) const {
  for (const ChainArc& arc : levels.at(level))
    if (arc.contains(alpha)) return true;
  return false;
}

CandidateChain chain_intersect(std::span<const BigInt> n_seq,
                               const Rational& eps, const BigInt& L) {
  if (eps <= 0 || eps >= Rational(1, 2))
    throw parameter_error("chain_intersect: eps must lie in (0, 1/2)");
  if (n_seq.empty()) throw parameter_error("chain_intersect: empty sequence");
  for (std::size_t k = 0; k + 1 < n_seq.size(); ++k)
    if (n_seq[k + 1] <= n_seq[k])
      throw parameter_error("chain_intersect: sequence not strictly increasing");
  if (n_seq.front() <= 0)
    throw parameter_error("chain_intersect: sequence entries must be positive");

  int k0 = -1;
  for (std::size_t k = 0; k < n_seq.size(); ++k)
    if (n_seq[k] > L) { k0 = static_cast<int>(k); break; }
  if (k0 < 0) throw parameter_error("chain_intersect: window empty (L >= n_last)");

  CandidateChain chain;
  chain.n_seq.assign(n_seq.begin(), n_seq.end());
  chain.eps = eps;
  chain.L = L;
  chain.start_index = k0;

  // root arcs: all n_{k0} arcs of B^eps_{n_{k0}}
  {
    const BigInt& n = n_seq[k0];
    Rational w = eps / Rational(n);
    std::vector<ChainArc> root;
    for (BigInt j = 0; j < n; ++j) {
      Rational c(j, n);
      root.push_back(ChainArc{j, c - w, c + w, -1});
    }
    chain.levels.push_back(std::move(root));
  }

  for (std::size_t k = k0 + 1; k < n_seq.size(); ++k) {
    const BigInt& n = n_seq[k];
    Rational w = eps / Rational(n);
    std::vector<ChainArc> next;
    const std::vector<ChainArc>& prev = chain.levels.back();
    for (std::size_t pi = 0; pi < prev.size(); ++pi) {
      const ChainArc& arc = prev[pi];
      // candidate centers j/n inside the eps/n dilation of (lo, hi)
      BigInt jlo = ceil_rational((arc.lo - w) * Rational(n));
      BigInt jhi = floor_rational((arc.hi + w) * Rational(n));
      for (BigInt j = jlo; j <= jhi; ++j) {
        Rational c(j, n);
        Rational lo = std::max(arc.lo, Rational(c - w));
        Rational hi = std::min(arc.hi, Rational(c + w));
        if (lo < hi)
          next.push_back(ChainArc{j, lo, hi, static_cast<int>(pi)});
      }
    }
    chain.levels.push_back(std::move(next));
  }
  return chain;
}

BoundCheckReport cardinality_bound_check(const CandidateChain& chain,
                                         const Rational& ratio_bound) {
  BoundCheckReport rep;
  rep.survivor_limit = chain.n_seq[chain.start_index];
  rep.survivor_count = chain.survivors().size();
  if (chain.eps >= Rational(1) / (4 * ratio_bound)) return rep;  // hypothesis fails
  for (std::size_t k = chain.start_index; k + 1 < chain.n_seq.size(); ++k)
    if (Rational(chain.n_seq[k + 1], chain.n_seq[k]) >= ratio_bound) return rep;
  rep.applicable = true;

  rep.pass = true;
  for (std::size_t lvl = 1; lvl < chain.levels.size(); ++lvl) {
    // one child per parent, and distinct children (no B-arc claimed twice)
    std::vector<int> parents;
    std::vector<BigInt> grid;
    for (const ChainArc& arc : chain.levels[lvl]) {
      parents.push_back(arc.parent);
      grid.push_back(arc.grid_index);
    }
    std::sort(parents.begin(), parents.end());
    if (std::adjacent_find(parents.begin(), parents.end()) != parents.end()) {
      rep.pass = false;
      rep.violating_stage = static_cast<int>(lvl);
      return rep;
    }
    std::sort(grid.begin(), grid.end());
    if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
      rep.pass = false;
      rep.violating_stage = static_cast<int>(lvl);
      return rep;
    }
  }
  if (BigInt(rep.survivor_count) > rep.survivor_limit) {
    rep.pass = false;
    rep.violating_stage = static_cast<int>(chain.levels.size()) - 1;
  }
  return rep;
}

GateResult chacon_gate(const Rational& alpha, const BigInt& n,
                       const Rational& eps) {
  GateResult res;
  res.defect_n = circle_norm(Rational(n) * alpha);
  res.defect_n1 = circle_norm(Rational(n + 1) * alpha);
  if (res.defect_n >= eps || res.defect_n1 >= eps) return res;  // inapplicable
  res.applicable = true;
  res.alpha_bound = res.defect_n + res.defect_n1;
  return res;
}

ScreenResult eigenvalue_screen(std::span<const BigInt> sequence,
                               const Rational& eps, int first, int last) {
  if (first < 0 || last < first || last >= static_cast<int>(sequence.size()))
    throw parameter_error("eigenvalue_screen: window out of range");
  ScreenResult res;
  res.window_sequence.assign(sequence.begin() + first,
                             sequence.begin() + last + 1);
  res.chain = chain_intersect(res.window_sequence, eps, 0);
  for (const ChainArc& arc : res.chain.survivors()) {
    Survivor s;
    s.center = mod_one(arc.center());
    s.half_width = arc.half_width();
    s.trivial = arc.contains_zero();
    if (!s.trivial) ++res.nontrivial;
    res.survivors.push_back(std::move(s));
  }
  std::sort(res.survivors.begin(), res.survivors.end(),
            [](const Survivor& a, const Survivor& b) { return a.center < b.center; });
  return res;
}

}  // namespace stacklab
