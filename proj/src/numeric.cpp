#include "stacklab/numeric.hpp"

#include <cctype>

namespace stacklab {

BigInt floor_rational(const Rational& q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  BigInt d = num / den;  // truncates toward zero
  if (num < 0 && d * den != num) --d;
  return d;
}

BigInt ceil_rational(const Rational& q) {
  return -floor_rational(-q);
}

Rational mod_one(const Rational& q) {
  return q - Rational(floor_rational(q));
}

Rational parse_rational(const std::string& text) {
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_int(text))
      throw parameter_error("rational must be an exact num/den string, got '" +
                            text + "'");
    return Rational(BigInt(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw parameter_error("rational must be an exact num/den string, got '" +
                          text + "'");
  BigInt d(den);
  if (d == 0) throw parameter_error("rational denominator is zero in '" + text + "'");
  return Rational(BigInt(num), d);
}

std::string format_rational(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string decimal_string(const Rational& q, int digits) {
  bool neg = q < 0;
  Rational a = neg ? Rational(-q) : q;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero on the scaled value
  BigInt scaled = (numerator(a) * scale * 2 + denominator(a)) / (denominator(a) * 2);
  BigInt ip = scaled / scale;
  BigInt fp = scaled % scale;
  std::string frac = fp.str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = ip.str();
  if (digits > 0) out += "." + frac;
  if (neg && (ip != 0 || fp != 0)) out.insert(out.begin(), '-');
  return out;
}

}  // namespace stacklab
