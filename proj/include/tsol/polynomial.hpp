#pragma once

#include "tsol/rational.hpp"

#include <optional>
#include <vector>

namespace tsol {

// Dense univariate polynomial over BigRational. coef[k] is the coefficient of
// x^k; the representation is normalized so the last entry is nonzero (the zero
// polynomial has an empty vector and degree() == -1).
class RationalPolynomial {
public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<BigRational> coefficients);

  static RationalPolynomial constant(const BigRational& c);
  static RationalPolynomial monomial(int k, const BigRational& c);

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  bool is_zero() const { return coef_.empty(); }
  const std::vector<BigRational>& coefficients() const { return coef_; }
  BigRational coefficient(int k) const;
  BigRational leading_coefficient() const;

  BigRational eval(const BigRational& x) const;
  double eval_double(double x) const;

  RationalPolynomial derivative() const;

  RationalPolynomial operator-() const;
  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const BigRational& c) const;
  bool operator==(const RationalPolynomial& o) const { return coef_ == o.coef_; }

private:
  std::vector<BigRational> coef_;
  void normalize();
};

// q with q(y) = p(y + a), computed by repeated synthetic division by (x - a).
RationalPolynomial taylor_shift(const RationalPolynomial& p, const BigRational& a);

// Polynomial remainder of a by b (degree(b) >= 0 required).
RationalPolynomial poly_remainder(const RationalPolynomial& a, const RationalPolynomial& b);

// Standard Sturm chain: p, p', then negated remainders until constant/zero.
// Counts distinct real roots; no squarefree preprocessing is needed.
std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& p);

// Number of distinct real roots of p in the half-open interval (a, b].
// p(a) != 0 and p(b) != 0 are required.
int count_roots_in(const std::vector<RationalPolynomial>& chain,
                   const BigRational& a, const BigRational& b);

// Upper bound B such that every real root of p lies in (-B, B) (Cauchy bound).
BigRational root_bound(const RationalPolynomial& p);

// Exact sign behaviour of p on the closed ray [0, inf).
struct RaySignReport {
  // Constant sign off roots: -1, 0 (identically zero) or +1.
  int sign = 0;
  // True when p changes sign somewhere on (0, inf).
  bool has_sign_change = false;
  // A bracket [lo, hi] with p(lo) * p(hi) < 0 when has_sign_change is set.
  BigRational change_lo, change_hi;
  // Distinct roots in (0, inf), counting touch points.
  int root_count = 0;
};

// Analyze sign of p on [0, inf); if a crossing exists the reported bracket is
// refined by exact bisection until hi - lo <= bracket_width.
RaySignReport analyze_on_ray(const RationalPolynomial& p, const BigRational& bracket_width);

} // namespace tsol
