#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "core/types.hpp"

namespace et::mac {

using Rational = mpq_class;

Rational rpow(const Rational& q, int n);
// Parses "p/q", "p" or a finite decimal such as "1.25".
Rational parse_rational(const std::string& s);
double to_double(const Rational& r);

// Finite Laurent polynomial in x with exact rational coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: constant polynomial
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT
  static LaurentPoly monomial(int degree, const Rational& coef = 1);
  static LaurentPoly x() { return monomial(1); }

  const std::map<int, Rational>& terms() const { return c_; }
  Rational coeff(int degree) const;
  bool is_zero() const { return c_.empty(); }
  int max_degree() const;  // requires nonzero
  int min_degree() const;
  bool is_symmetric() const;
  Rational constant_term() const { return coeff(0); }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& r);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& r) { return a *= r; }
  friend LaurentPoly operator*(const Rational& r, LaurentPoly a) { return a *= r; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

  // f(r x)
  LaurentPoly scale(const Rational& r) const;
  // f(r / x)
  LaurentPoly reflect_scale(const Rational& r) const;
  // f(1/x)
  LaurentPoly reflect() const { return reflect_scale(1); }
  // f(x^k), k != 0
  LaurentPoly substitute_power(int k) const;

  // Exact quotient; throws Errc::consistency when d does not divide.
  LaurentPoly divide_exact(const LaurentPoly& d) const;
  // Quotient and remainder after normalizing both to ordinary polynomials.
  bool divides_into(const LaurentPoly& d, LaurentPoly* quotient) const;

  cplx eval(cplx x) const;
  std::string to_string() const;

 private:
  void add_term(int d, const Rational& v);
  std::map<int, Rational> c_;
};

}  // namespace et::mac
