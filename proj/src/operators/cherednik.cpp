#include "operators/cherednik.hpp"

#include "macdonald/macdonald.hpp"

namespace et::ops {

namespace {

void require_q(const Rational& q) {
  if (q == 0 || q * q == 1) throw Error(Errc::domain, "q must satisfy q != 0 and q^2 != 1");
}

LaurentPoly mono(int d, const Rational& c = 1) { return LaurentPoly::monomial(d, c); }

}  // namespace

LaurentPoly cherednik_w(const LaurentPoly& f, const Rational& q) { return f.reflect_scale(q); }

LaurentPoly cherednik_Gamma(const LaurentPoly& f, const Rational& q) { return f.scale(q); }

LaurentPoly cherednik_Y(const LaurentPoly& f, const Rational& q, YConvention c) {
  require_q(q);
  const int e = c == YConvention::macdonald ? 2 : 1;
  const Rational t = mac::rpow(q, e);  // q, or q_M = q^2
  const LaurentPoly num = (LaurentPoly(1 / t) - mono(e, t)) * f.scale(q) +
                          LaurentPoly(t - 1 / t) * f.reflect_scale(q);
  return num.divide_exact(LaurentPoly(1) - mono(e));
}

// Gamma^-1 (t - X/t)/(1-X) + w X (t - 1/t)/(1-X), X = x^e, brought to the
// common denominator t - X.
LaurentPoly cherednik_Y_inv(const LaurentPoly& f, const Rational& q, YConvention c) {
  require_q(q);
  const int e = c == YConvention::macdonald ? 2 : 1;
  const Rational t = mac::rpow(q, e);
  const LaurentPoly num = (LaurentPoly(t * t) - mono(e, 1 / t)) * f.scale(1 / q) -
                          LaurentPoly(t * (t - 1 / t)) * f.reflect_scale(q);
  return num.divide_exact(LaurentPoly(t) - mono(e));
}

LaurentPoly apply_f_of_Y(const LaurentPoly& f, const LaurentPoly& P, const Rational& q,
                         YConvention c) {
  if (!f.is_symmetric()) throw Error(Errc::argument, "f(Y) needs a symmetric Laurent polynomial f");
  LaurentPoly out;
  if (f.is_zero()) return out;
  out += P * f.coeff(0);
  LaurentPoly up = P, down = P;
  for (int d = 1; d <= f.max_degree(); ++d) {
    up = cherednik_Y(up, q, c);
    down = cherednik_Y_inv(down, q, c);
    out += up * f.coeff(d);
    out += down * f.coeff(-d);
  }
  return out;
}

// coefficient_m = -q^-2 [q^-2 (q^m + q^-m)/2 - (x^2 q^m + x^-2 q^-m)/2] s(x q^m) / (s(x/q) s(x) s(xq))
// with s(z) = (z - 1/z)/(2i); the factors of 2i combine to the rational -4.
TqApplication T_q_apply(const LaurentPoly& P, const Rational& q, int m_range) {
  require_q(q);
  if (m_range < 0) throw Error(Errc::argument, "m_range must be non-negative");
  TqApplication out;
  out.denominator = (mono(1, 1 / q) - mono(-1, q)) * (mono(1) - mono(-1)) *
                    (mono(1, q) - mono(-1, 1 / q));
  const Rational h(1, 2);
  for (int m = -m_range; m <= m_range; ++m) {
    const Rational qm = mac::rpow(q, m), qmi = mac::rpow(q, -m);
    const LaurentPoly num = LaurentPoly(h / (q * q) * (qm + qmi)) - mono(2, h * qm) - mono(-2, h * qmi);
    const LaurentPoly sm = mono(1, qm) - mono(-1, qmi);
    const Rational c = Rational(4) / (q * q);  // -q^-2 * (2i)^3 / (2i) = 4 q^-2
    out.terms.push_back({m, num * sm * P.scale(qm) * c});
  }
  return out;
}

cplx T_q_value(int j, cplx x, cplx q, int m_range, int weight_sign) {
  auto s = [](cplx z) { return (z - 1.0 / z) / (2.0 * I); };
  const cplx den = s(x / q) * s(x) * s(x * q);
  cplx tot = 0.0;
  for (int m = -m_range; m <= m_range; ++m) {
    const cplx qm = std::pow(q, m);
    const cplx num = std::pow(q, -2) * (qm + 1.0 / qm) / 2.0 - (x * x * qm + 1.0 / (x * x * qm)) / 2.0;
    const cplx c = -std::pow(q, -2) * num / den * s(x * qm);
    tot += c * std::pow(q, weight_sign * 0.5 * m * m) * mac::macdonald_m2_value(j, x * qm, q);
  }
  return tot;
}

}  // namespace et::ops
