#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace tsol {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always in canonical form: reduced fraction,
// denominator > 0, zero stored as 0/1.
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) { num = -num; den = -den; }
  return BigRational(num, den);
}

// Accepts "p", "p/q" and plain decimals like "-2.75"; all parsed exactly.
BigRational rational_from_string(const std::string& text);

std::string rational_to_string(const BigRational& x);

inline double rational_to_double(const BigRational& x) {
  return x.convert_to<double>();
}

inline int rational_sign(const BigRational& x) { return x.sign(); }

} // namespace tsol
