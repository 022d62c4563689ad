#include "tsol/rational.hpp"

#include <cctype>

namespace tsol {

namespace {

BigInt parse_integer(const std::string& s, size_t lo, size_t hi) {
  if (lo >= hi) throw std::invalid_argument("rational: empty integer in '" + s + "'");
  for (size_t i = lo; i < hi; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("rational: bad digit in '" + s + "'");
  }
  return BigInt(s.substr(lo, hi - lo));
}

} // namespace

BigRational rational_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("rational: empty string");

  bool neg = false;
  size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') { neg = (s[0] == '-'); pos = 1; }

  size_t slash = s.find('/', pos);
  if (slash != std::string::npos) {
    BigInt num = parse_integer(s, pos, slash);
    size_t dpos = slash + 1;
    bool dneg = false;
    if (dpos < s.size() && (s[dpos] == '+' || s[dpos] == '-')) {
      dneg = (s[dpos] == '-');
      ++dpos;
    }
    BigInt den = parse_integer(s, dpos, s.size());
    if (neg != dneg) num = -num;
    return make_rational(num, den);
  }

  size_t dot = s.find('.', pos);
  if (dot != std::string::npos) {
    std::string digits = s.substr(pos, dot - pos) + s.substr(dot + 1);
    if (digits.empty()) throw std::invalid_argument("rational: bad decimal '" + text + "'");
    BigInt num = parse_integer(digits, 0, digits.size());
    BigInt den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    if (neg) num = -num;
    return make_rational(num, den);
  }

  BigInt num = parse_integer(s, pos, s.size());
  if (neg) num = -num;
  return BigRational(num);
}

std::string rational_to_string(const BigRational& x) {
  BigInt num = numerator(x), den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

} // namespace tsol
