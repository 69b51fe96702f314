#include "macdonald/laurent.hpp"

#include <regex>
#include <sstream>
#include <vector>

namespace et::mac {

Rational rpow(const Rational& q, int n) {
  if (n < 0) {
    if (q == 0) throw Error(Errc::domain, "zero to a negative power");
    return rpow(Rational(1) / q, -n);
  }
  Rational r = 1, b = q;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

Rational parse_rational(const std::string& s) {
  static const std::regex frac(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    Rational r(mpz_class(m[1].str(), 10), mpz_class(m[2].matched ? m[2].str() : "1", 10));
    if (r.get_den() == 0) throw Error(Errc::argument, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }
  if (std::regex_match(s, m, dec)) {
    const std::string digits = m[2].str() + m[3].str();
    mpz_class den = 1;
    for (std::size_t i = 0; i < m[3].str().size(); ++i) den *= 10;
    Rational r(mpz_class(digits, 10), den);
    r.canonicalize();
    return m[1].str() == "-" ? Rational(-r) : r;
  }
  throw Error(Errc::argument, "malformed rational literal '" + s + "'");
}

double to_double(const Rational& r) { return r.get_d(); }

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) c_[0] = c;
}

LaurentPoly LaurentPoly::monomial(int degree, const Rational& coef) {
  LaurentPoly p;
  p.add_term(degree, coef);
  return p;
}

void LaurentPoly::add_term(int d, const Rational& v) {
  if (v == 0) return;
  auto it = c_.find(d);
  if (it == c_.end()) {
    c_.emplace(d, v);
    return;
  }
  it->second += v;
  if (it->second == 0) c_.erase(it);
}

Rational LaurentPoly::coeff(int degree) const {
  auto it = c_.find(degree);
  return it == c_.end() ? Rational(0) : it->second;
}

int LaurentPoly::max_degree() const {
  if (c_.empty()) throw Error(Errc::argument, "degree of the zero polynomial");
  return c_.rbegin()->first;
}

int LaurentPoly::min_degree() const {
  if (c_.empty()) throw Error(Errc::argument, "degree of the zero polynomial");
  return c_.begin()->first;
}

bool LaurentPoly::is_symmetric() const {
  for (const auto& [d, v] : c_)
    if (coeff(-d) != v) return false;
  return true;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [d, v] : o.c_) add_term(d, v);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [d, v] : o.c_) add_term(d, -v);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& r) {
  if (r == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [d, v] : c_) v *= r;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [da, va] : a.c_)
    for (const auto& [db, vb] : b.c_) p.add_term(da + db, va * vb);
  return p;
}

LaurentPoly LaurentPoly::scale(const Rational& r) const {
  LaurentPoly p;
  for (const auto& [d, v] : c_) p.add_term(d, v * rpow(r, d));
  return p;
}

LaurentPoly LaurentPoly::reflect_scale(const Rational& r) const {
  LaurentPoly p;
  for (const auto& [d, v] : c_) p.add_term(-d, v * rpow(r, d));
  return p;
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
  if (k == 0) throw Error(Errc::argument, "substitute_power needs k != 0");
  LaurentPoly p;
  for (const auto& [d, v] : c_) p.add_term(d * k, v);
  return p;
}

bool LaurentPoly::divides_into(const LaurentPoly& den, LaurentPoly* quotient) const {
  if (den.is_zero()) throw Error(Errc::domain, "division by the zero polynomial");
  if (is_zero()) {
    if (quotient) *quotient = LaurentPoly();
    return true;
  }
  // Work with ordinary polynomials: num * x^-n0, den * x^-d0 (den has a
  // nonzero constant term, so monomials are the only units involved).
  const int n0 = min_degree(), d0 = den.min_degree();
  const int dn = den.max_degree() - d0;
  std::vector<Rational> r(max_degree() - n0 + 1), d(dn + 1);
  for (const auto& [k, v] : c_) r[k - n0] = v;
  for (const auto& [k, v] : den.c_) d[k - d0] = v;
  const int qn = static_cast<int>(r.size()) - 1 - dn;
  LaurentPoly q;
  for (int i = qn; i >= 0; --i) {
    const Rational f = r[i + dn] / d[dn];
    if (f == 0) continue;
    q.add_term(i + n0 - d0, f);
    for (int k = 0; k <= dn; ++k) r[i + k] -= f * d[k];
  }
  for (const auto& v : r)
    if (v != 0) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const {
  LaurentPoly q;
  if (!divides_into(d, &q))
    throw Error(Errc::consistency, "inexact division of " + to_string() + " by " + d.to_string());
  return q;
}

cplx LaurentPoly::eval(cplx x) const {
  cplx s = 0.0;
  for (const auto& [d, v] : c_) s += v.get_d() * std::pow(x, d);
  return s;
}

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [d, v] = *it;
    const bool neg = v < 0;
    const Rational a = neg ? Rational(-v) : v;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (d == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "x";
    if (d != 1) os << "^" << d;
  }
  return os.str();
}

}  // namespace et::mac
