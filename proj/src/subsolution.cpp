#include "tsol/subsolution.hpp"

#include "tsol/profile_ode.hpp"

#include <cmath>

namespace tsol {

double tau_eval(int n, const BigRational& R_star, double r) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  const double s = r - rational_to_double(R_star);
  return s * s / (2.0 * (n - 1)) - 0.5 * std::log1p(s * s);
}

double tau_slope_eval(int n, const BigRational& R_star, double r) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  const double s = r - rational_to_double(R_star);
  return s / (n - 1) - s / (1.0 + s * s);
}

double psi(int n, double df, double ddf, double r) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (!(r > 0.0)) throw DomainError("operator defined for positive radius only");
  return ddf - (1.0 + df * df) * (1.0 - (n - 1) * df / r);
}

RationalPolynomial derive_polynomial(int n, const BigRational& R_star) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (rational_sign(R_star) < 0) throw DomainError("turning radius must be nonnegative");
  const BigRational one(1), nm1(n - 1);
  const BigRational nm1_sq = static_cast<BigRational>(nm1 * nm1);
  const auto r = RationalPolynomial::monomial(1, one);
  const auto s = r - RationalPolynomial::constant(R_star);
  const auto A = RationalPolynomial::constant(one) + s * s;
  const auto q = s * s + RationalPolynomial::constant(BigRational(2 - n));
  const auto M = A * A * nm1_sq + s * s * q * q;
  const auto one_minus_s2 = RationalPolynomial::constant(one) - s * s;
  const auto first = A * r * (A * A - one_minus_s2 * nm1) * nm1;
  const auto second = M * (A * R_star + s * nm1);
  return first - second;
}

namespace {

// a0 + a1 n + a2 n^2 + a3 n^3 as an exact rational.
BigRational npoly(int n, long a0, long a1, long a2, long a3) {
  const long long N = n;
  return BigRational(a0 + a1 * N + a2 * N * N + a3 * N * N * N);
}

BigRational pow_r(const BigRational& x, int k) {
  BigRational out(1);
  for (int i = 0; i < k; ++i) out = static_cast<BigRational>(out * x);
  return out;
}

} // namespace

std::array<BigRational, 9> printed_coefficients(int n, const BigRational& R_star,
                                              CoefficientBasis basis) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  const BigRational& R = R_star;
  std::array<BigRational, 9> c;
  if (basis == CoefficientBasis::centered) {
    c[0] = static_cast<BigRational>(npoly(n, -3, 5, -2, 0) * R);
    c[1] = npoly(n, -1, 0, 2, -1);
    c[2] = static_cast<BigRational>(npoly(n, -10, 13, -4, 0) * R);
    c[3] = npoly(n, 3, -11, 11, -3);
    c[4] = static_cast<BigRational>(npoly(n, -13, 13, -3, 0) * R);
    c[5] = npoly(n, 3, -8, 6, -1);
    c[6] = static_cast<BigRational>(npoly(n, -7, 5, -1, 0) * R);
    c[7] = BigRational(0);
    c[8] = static_cast<BigRational>(-R);
    return c;
  }
  c[0] = static_cast<BigRational>(
      pow_r(R, 9) + npoly(n, 7, -5, 1, 0) * pow_r(R, 7) +
      npoly(n, 16, -21, 9, -1) * pow_r(R, 5) + npoly(n, 13, -24, 15, -3) * pow_r(R, 3) +
      npoly(n, 2, -5, 4, -1) * R);
  c[1] = static_cast<BigRational>(
      BigRational(8) * pow_r(R, 8) + npoly(n, 42, -30, 6, 0) * pow_r(R, 6) +
      npoly(n, 67, -92, 42, -5) * pow_r(R, 4) + npoly(n, 29, -59, 41, -9) * pow_r(R, 2) +
      npoly(n, -1, 0, 2, -1));
  c[2] = static_cast<BigRational>(
      BigRational(28) * pow_r(R, 7) + npoly(n, 105, -75, 15, 0) * pow_r(R, 5) +
      npoly(n, 108, -158, 78, -10) * pow_r(R, 3) + npoly(n, 19, -46, 37, -9) * R);
  c[3] = static_cast<BigRational>(
      BigRational(56) * pow_r(R, 6) + BigRational(20) * npoly(n, 7, -5, 1, 0) * pow_r(R, 4) +
      npoly(n, 82, -132, 72, -10) * pow_r(R, 2) + npoly(n, 3, -11, 11, -3));
  c[4] = static_cast<BigRational>(
      BigRational(70) * pow_r(R, 5) + BigRational(15) * npoly(n, 7, -5, 1, 0) * pow_r(R, 3) +
      npoly(n, 28, -53, 33, -5) * R);
  // The printed c5 row repeats the R*^2 monomial; transcribed as printed.
  c[5] = static_cast<BigRational>(BigRational(56) * pow_r(R, 2) +
                                  BigRational(6) * npoly(n, 7, -5, 1, 0) * pow_r(R, 2) +
                                  npoly(n, 3, -8, 6, -1));
  c[6] = static_cast<BigRational>(BigRational(28) * pow_r(R, 3) + npoly(n, 7, -5, 1, 0) * R);
  c[7] = static_cast<BigRational>(BigRational(8) * pow_r(R, 2));
  c[8] = static_cast<BigRational>(-R);
  return c;
}

SignVerdict nonpositive_on_ray(const RationalPolynomial& p, const BigRational& a,
                               const BigRational& bracket_width) {
  const auto shifted = taylor_shift(p, a);
  const auto ray = analyze_on_ray(shifted, bracket_width);
  SignVerdict v;
  v.root_count = ray.root_count;
  if (ray.has_sign_change) {
    v.kind = SignVerdict::Kind::sign_change;
    v.bracket_lo = static_cast<BigRational>(ray.change_lo + a);
    v.bracket_hi = static_cast<BigRational>(ray.change_hi + a);
    return v;
  }
  if (ray.sign == 0)
    v.kind = SignVerdict::Kind::identically_zero;
  else
    v.kind = ray.sign < 0 ? SignVerdict::Kind::nonpositive_on_ray
                          : SignVerdict::Kind::nonnegative_on_ray;
  return v;
}

const char* verdict_name(SignVerdict::Kind kind) {
  switch (kind) {
    case SignVerdict::Kind::nonpositive_on_ray: return "nonpositive_on_ray";
    case SignVerdict::Kind::nonnegative_on_ray: return "nonnegative_on_ray";
    case SignVerdict::Kind::identically_zero: return "identically_zero";
    case SignVerdict::Kind::sign_change: return "sign_change";
  }
  return "unknown";
}

namespace {

TableAudit audit_pair(std::string a_label, const std::array<BigRational, 9>& a,
                      std::string b_label, const std::array<BigRational, 9>& b) {
  TableAudit audit;
  audit.a_label = std::move(a_label);
  audit.b_label = std::move(b_label);
  audit.identical = true;
  for (int k = 0; k <= 8; ++k) {
    CoefficientDiff d;
    d.k = k;
    d.a = rational_to_string(a[static_cast<size_t>(k)]);
    d.b = rational_to_string(b[static_cast<size_t>(k)]);
    d.equal = a[static_cast<size_t>(k)] == b[static_cast<size_t>(k)];
    audit.identical = audit.identical && d.equal;
    audit.rows.push_back(std::move(d));
  }
  // Scalar relation a_k = factor * b_k across all rows.
  BigRational factor(0);
  bool have_factor = false, consistent = true;
  for (int k = 0; k <= 8 && consistent; ++k) {
    const auto& ak = a[static_cast<size_t>(k)];
    const auto& bk = b[static_cast<size_t>(k)];
    const bool az = rational_sign(ak) == 0, bz = rational_sign(bk) == 0;
    if (az != bz) consistent = false;
    if (az || bz) continue;
    const BigRational f = static_cast<BigRational>(ak / bk);
    if (!have_factor) {
      factor = f;
      have_factor = true;
    } else if (!(f == factor)) {
      consistent = false;
    }
  }
  audit.scalar_multiple = consistent && have_factor;
  if (audit.scalar_multiple) {
    audit.factor = rational_to_string(factor);
    audit.proportional = rational_sign(factor) > 0;
  }
  return audit;
}

std::array<BigRational, 9> poly_table(const RationalPolynomial& p) {
  std::array<BigRational, 9> t;
  for (int k = 0; k <= 8; ++k) t[static_cast<size_t>(k)] = p.coefficient(k);
  return t;
}

} // namespace

TableAudit audit_printed_table(int n, const BigRational& R_star, CoefficientBasis basis) {
  const auto p = derive_polynomial(n, R_star);
  const auto derived = basis == CoefficientBasis::origin
                           ? p
                           : taylor_shift(p, R_star); // q(s) = P(s + R*)
  if (derived.degree() > 8)
    throw DomainError("derived polynomial exceeds the printed table degree");
  return audit_pair(basis == CoefficientBasis::origin ? "printed origin table"
                                                      : "printed centered table",
                    printed_coefficients(n, R_star, basis), "derived polynomial",
                    poly_table(derived));
}

TableAudit audit_shifted_tables(int n, const BigRational& R_star) {
  const auto origin_table = printed_coefficients(n, R_star, CoefficientBasis::origin);
  const RationalPolynomial printed_origin(
      std::vector<BigRational>(origin_table.begin(), origin_table.end()));
  const auto shifted = taylor_shift(printed_origin, R_star);
  if (shifted.degree() > 8)
    throw DomainError("shifted table exceeds the printed table degree");
  return audit_pair("printed origin table shifted to the turning point",
                    poly_table(shifted), "printed centered table",
                    printed_coefficients(n, R_star, CoefficientBasis::centered));
}

LemmaReport verify_lemmas(const std::vector<int>& n_set,
                          const std::vector<BigRational>& Rstar_grid) {
  LemmaReport report;
  report.all_pass = true;
  for (int n : n_set) {
    for (const auto& R : Rstar_grid) {
      LemmaCase lc;
      lc.n = n;
      lc.R_star = R;
      const auto p = derive_polynomial(n, R);
      lc.verdict = nonpositive_on_ray(p, R);
      lc.pass = lc.verdict.kind == SignVerdict::Kind::nonpositive_on_ray ||
                lc.verdict.kind == SignVerdict::Kind::identically_zero;
      if (n >= 5) {
        lc.centered_signs_checked = true;
        lc.centered_signs_ok = true;
        const auto centered = taylor_shift(p, R);
        for (int k = 0; k <= centered.degree(); ++k)
          if (rational_sign(centered.coefficient(k)) > 0) lc.centered_signs_ok = false;
        lc.pass = lc.pass && lc.centered_signs_ok;
      }
      report.all_pass = report.all_pass && lc.pass;
      report.cases.push_back(std::move(lc));
    }
  }
  return report;
}

} // namespace tsol
