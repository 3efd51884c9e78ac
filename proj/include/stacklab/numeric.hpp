#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stacklab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parameter/config problems (bad shapes, out-of-range values, malformed
// rationals). CLI maps these to exit code 2.
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction precondition failed for concrete inputs (e.g. 2t_k > h_k).
// CLI maps these to exit code 3.
class construction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant did not hold; indicates a bug, not bad input.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline BigInt denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

// Largest integer <= q.
BigInt floor_rational(const Rational& q);

// Smallest integer >= q.
BigInt ceil_rational(const Rational& q);

// q reduced mod 1 into [0, 1).
Rational mod_one(const Rational& q);

// Parses "num/den" (or a bare integer) into an exact rational. Decimal
// notation is rejected: exactness is part of the interface contract.
Rational parse_rational(const std::string& text);

// "num/den" form, canonical (reduced, den > 0).
std::string format_rational(const Rational& q);

// Display-only decimal expansion with `digits` places, round half away
// from zero. Exact arithmetic; no float round trip.
std::string decimal_string(const Rational& q, int digits);

}  // namespace stacklab
