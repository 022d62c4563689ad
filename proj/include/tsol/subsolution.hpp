#pragma once

#include "tsol/polynomial.hpp"
#include "tsol/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace tsol {

// Comparison profile tau(r) = (r-R*)^2/(2(n-1)) - (1/2) log(1+(r-R*)^2) and
// its slope. Floating evaluation; the algebra below never uses these.
double tau_eval(int n, const BigRational& R_star, double r);
double tau_slope_eval(int n, const BigRational& R_star, double r);

// Graph translator operator Psi(f) = f'' - (1+f'^2)(1 - (n-1) f'/r) from the
// two derivatives. Solutions have Psi = 0, subsolutions Psi <= 0. r > 0.
double psi(int n, double df, double ddf, double r);

// Defect numerator of Psi(tau) as an exact polynomial in r. With s = r - R*,
// A = 1+s^2, q = s^2+2-n, clearing the positive factor r (n-1)^2 A^3 leaves
//   P(r) = (n-1) A r [A^2 - (n-1)(1-s^2)] - [(n-1)^2 A^2 + s^2 q^2][R* A + (n-1) s],
// so Psi(tau)(r) <= 0 iff P(r) <= 0 for every r > 0.
RationalPolynomial derive_polynomial(int n, const BigRational& R_star);

// Basis of a 9-entry coefficient table: powers of r, or powers of s = r - R*.
enum class CoefficientBasis { origin, centered };

// The published coefficient tables, transcribed verbatim (defects included;
// the audits below compare them against the derived polynomial).
std::array<BigRational, 9> printed_coefficients(int n, const BigRational& R_star,
                                              CoefficientBasis basis);

// Exact sign of p on the ray [a, inf).
struct SignVerdict {
  enum class Kind { nonpositive_on_ray, nonnegative_on_ray, identically_zero, sign_change };
  Kind kind = Kind::identically_zero;
  BigRational bracket_lo, bracket_hi; // crossing bracket in p's own variable
  int root_count = 0;                 // distinct roots in (a, inf)
};
SignVerdict nonpositive_on_ray(const RationalPolynomial& p, const BigRational& a,
                               const BigRational& bracket_width = make_rational(1, 1000000000));
const char* verdict_name(SignVerdict::Kind kind);

// Row-by-row comparison of two coefficient tables (k = 0..8), with detection
// of an exact scalar relation a_k = factor * b_k.
struct CoefficientDiff {
  int k = 0;
  std::string a, b; // exact rationals
  bool equal = false;
};
struct TableAudit {
  std::string a_label, b_label;
  std::vector<CoefficientDiff> rows;
  bool identical = false;
  bool scalar_multiple = false; // single nonzero factor with a = factor * b
  std::string factor;           // set when scalar_multiple
  bool proportional = false;    // scalar_multiple with positive factor
};

// Printed table in the given basis against the derived polynomial.
TableAudit audit_printed_table(int n, const BigRational& R_star, CoefficientBasis basis);
// Printed origin table shifted to the turning point against the printed
// centered table.
TableAudit audit_shifted_tables(int n, const BigRational& R_star);

// Grid certification: per (n, R*) the derived-polynomial verdict on
// [R*, inf), plus for n >= 5 the uniform-sign check of the derived centered
// coefficients (all <= 0, the sign that forces P <= 0 on the ray).
struct LemmaCase {
  int n = 0;
  BigRational R_star;
  SignVerdict verdict;
  bool centered_signs_checked = false;
  bool centered_signs_ok = false;
  bool pass = false;
};
struct LemmaReport {
  std::vector<LemmaCase> cases;
  bool all_pass = false;
};
LemmaReport verify_lemmas(const std::vector<int>& n_set,
                          const std::vector<BigRational>& Rstar_grid);

} // namespace tsol
