#include "tsol/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tsol {

RationalPolynomial::RationalPolynomial(std::vector<BigRational> coefficients)
    : coef_(std::move(coefficients)) {
  normalize();
}

void RationalPolynomial::normalize() {
  while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(const BigRational& c) {
  return RationalPolynomial(std::vector<BigRational>{c});
}

RationalPolynomial RationalPolynomial::monomial(int k, const BigRational& c) {
  if (k < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<BigRational> v(static_cast<size_t>(k) + 1, BigRational(0));
  v.back() = c;
  return RationalPolynomial(std::move(v));
}

BigRational RationalPolynomial::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coef_.size())) return BigRational(0);
  return coef_[static_cast<size_t>(k)];
}

BigRational RationalPolynomial::leading_coefficient() const {
  if (coef_.empty()) return BigRational(0);
  return coef_.back();
}

BigRational RationalPolynomial::eval(const BigRational& x) const {
  BigRational acc(0);
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::eval_double(double x) const {
  double acc = 0.0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it)
    acc = acc * x + rational_to_double(*it);
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coef_.size() <= 1) return RationalPolynomial();
  std::vector<BigRational> d(coef_.size() - 1);
  for (size_t k = 1; k < coef_.size(); ++k) d[k - 1] = coef_[k] * BigRational(BigInt(k));
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::operator-() const {
  std::vector<BigRational> v(coef_.size());
  for (size_t i = 0; i < coef_.size(); ++i) v[i] = -coef_[i];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  std::vector<BigRational> v(std::max(coef_.size(), o.coef_.size()), BigRational(0));
  for (size_t i = 0; i < coef_.size(); ++i) v[i] += coef_[i];
  for (size_t i = 0; i < o.coef_.size(); ++i) v[i] += o.coef_[i];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  return *this + (-o);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  if (coef_.empty() || o.coef_.empty()) return RationalPolynomial();
  std::vector<BigRational> v(coef_.size() + o.coef_.size() - 1, BigRational(0));
  for (size_t i = 0; i < coef_.size(); ++i)
    for (size_t j = 0; j < o.coef_.size(); ++j) v[i + j] += coef_[i] * o.coef_[j];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator*(const BigRational& c) const {
  std::vector<BigRational> v(coef_.size());
  for (size_t i = 0; i < coef_.size(); ++i) v[i] = coef_[i] * c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial taylor_shift(const RationalPolynomial& p, const BigRational& a) {
  std::vector<BigRational> b = p.coefficients();
  if (b.empty()) return p;
  const int n = static_cast<int>(b.size());
  // Ruffini-Horner: after pass k, b[k] is the coefficient of y^k in p(y + a).
  for (int k = 0; k < n; ++k)
    for (int j = n - 2; j >= k; --j) b[static_cast<size_t>(j)] += a * b[static_cast<size_t>(j) + 1];
  return RationalPolynomial(std::move(b));
}

RationalPolynomial poly_remainder(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_remainder: division by zero polynomial");
  std::vector<BigRational> r = a.coefficients();
  const auto& d = b.coefficients();
  const BigRational lead = b.leading_coefficient();
  while (r.size() >= d.size() && !r.empty()) {
    BigRational q = r.back() / lead;
    size_t off = r.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i) r[off + i] -= q * d[i];
    // The top term cancels exactly; drop it and any new zero tail.
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return RationalPolynomial(std::move(r));
}

std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  RationalPolynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (chain.back().degree() > 0) {
    RationalPolynomial rem = poly_remainder(chain[chain.size() - 2], chain.back());
    if (rem.is_zero()) break;
    chain.push_back(-rem);
  }
  return chain;
}

namespace {

int variations_at(const std::vector<RationalPolynomial>& chain, const BigRational& x) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    int s = rational_sign(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

} // namespace

int count_roots_in(const std::vector<RationalPolynomial>& chain,
                   const BigRational& a, const BigRational& b) {
  assert(!chain.empty());
  assert(chain.front().eval(a) != 0 && chain.front().eval(b) != 0);
  return variations_at(chain, a) - variations_at(chain, b);
}

BigRational root_bound(const RationalPolynomial& p) {
  if (p.degree() <= 0) return BigRational(1);
  const auto& c = p.coefficients();
  BigRational lead = abs(c.back());
  BigRational m(0);
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    BigRational q = abs(c[i]) / lead;
    if (q > m) m = q;
  }
  return m + 2; // strict Cauchy bound
}

namespace {

struct Interval { BigRational lo, hi; int sign_lo, sign_hi; };

// Split (lo, hi] until each piece holds exactly one distinct root.
void isolate(const std::vector<RationalPolynomial>& chain, const RationalPolynomial& p,
             const BigRational& lo, const BigRational& hi, int nroots,
             std::vector<Interval>& out) {
  if (nroots == 0) return;
  int slo = rational_sign(p.eval(lo));
  int shi = rational_sign(p.eval(hi));
  if (nroots == 1) {
    out.push_back({lo, hi, slo, shi});
    return;
  }
  BigRational mid = (lo + hi) / 2;
  // Nudge until the midpoint is off every root of p.
  while (p.eval(mid) == 0) mid = (lo + mid) / 2;
  int left = count_roots_in(chain, lo, mid);
  isolate(chain, p, lo, mid, left, out);
  isolate(chain, p, mid, hi, nroots - left, out);
}

// Shrink a bracket with p(lo) * p(hi) < 0 to width <= w, keeping opposite signs.
void refine_bracket(const RationalPolynomial& p, BigRational& lo, BigRational& hi,
                    int& slo, int& shi, const BigRational& w) {
  while (hi - lo > w) {
    BigRational mid = (lo + hi) / 2;
    int sm = rational_sign(p.eval(mid));
    if (sm == 0) {
      // The unique root in the bracket is exactly mid.
      BigRational quarter = w / 4;
      BigRational nlo = mid - quarter, nhi = mid + quarter;
      if (nlo <= lo) nlo = (lo + mid) / 2;
      if (nhi >= hi) nhi = (mid + hi) / 2;
      lo = nlo; hi = nhi;
      slo = rational_sign(p.eval(lo));
      shi = rational_sign(p.eval(hi));
      return;
    }
    if (sm == slo) { lo = mid; } else { hi = mid; shi = sm; }
  }
}

} // namespace

RaySignReport analyze_on_ray(const RationalPolynomial& p, const BigRational& bracket_width) {
  RaySignReport rep;
  if (p.is_zero()) return rep;

  // Factor out the root at 0 so Sturm endpoints are regular; the x^m factor is
  // positive on (0, inf) and does not affect the sign analysis there.
  const auto& c = p.coefficients();
  size_t m = 0;
  while (m < c.size() && c[m] == 0) ++m;
  RationalPolynomial q(std::vector<BigRational>(c.begin() + static_cast<long>(m), c.end()));

  if (q.degree() == 0) {
    rep.sign = rational_sign(q.leading_coefficient());
    return rep;
  }

  auto chain = sturm_chain(q);
  BigRational B = root_bound(q);
  while (q.eval(B) == 0) B += 1; // paranoid; the Cauchy bound is already strict
  BigRational zero(0);
  int total = count_roots_in(chain, zero, B);
  rep.root_count = total;

  if (total == 0) {
    rep.sign = rational_sign(q.eval(B));
    return rep;
  }

  std::vector<Interval> ivs;
  isolate(chain, q, zero, B, total, ivs);
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  for (auto& iv : ivs) {
    if (iv.sign_lo != 0 && iv.sign_hi != 0 && iv.sign_lo != iv.sign_hi) {
      refine_bracket(q, iv.lo, iv.hi, iv.sign_lo, iv.sign_hi, bracket_width);
      rep.has_sign_change = true;
      rep.change_lo = iv.lo;
      rep.change_hi = iv.hi;
      return rep;
    }
  }

  // Roots exist but none crosses: constant sign off the touch points.
  rep.sign = rational_sign(q.eval(B));
  return rep;
}

} // namespace tsol
