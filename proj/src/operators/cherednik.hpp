#pragma once

#include <vector>

#include "macdonald/laurent.hpp"

namespace et::ops {

using mac::LaurentPoly;
using mac::Rational;

// literal: the operator as printed in (x, q).
// macdonald: the same formula in the variables X = x^2, q_M = q^2, where
//   Y f = [(q^-2 - q^2 x^2) f(qx) + (q^2 - q^-2) f(q/x)] / (1 - x^2).
enum class YConvention { macdonald, literal };

LaurentPoly cherednik_w(const LaurentPoly& f, const Rational& q);
LaurentPoly cherednik_Gamma(const LaurentPoly& f, const Rational& q);
LaurentPoly cherednik_Y(const LaurentPoly& f, const Rational& q,
                        YConvention c = YConvention::macdonald);
LaurentPoly cherednik_Y_inv(const LaurentPoly& f, const Rational& q,
                            YConvention c = YConvention::macdonald);

// f(Y) P for symmetric f, expanded in powers of Y and Y^-1.
LaurentPoly apply_f_of_Y(const LaurentPoly& f, const LaurentPoly& P, const Rational& q,
                         YConvention c = YConvention::macdonald);

// One summand of the infinite order difference operator, without the
// Gaussian weight q^{-m^2/2}: coefficient(x) * P(q^m x), written as
// numerator / denominator with the common denominator
// (x/q - q/x)(x - 1/x)(qx - 1/(qx)).
struct TqTerm {
  int m = 0;
  LaurentPoly numerator;
};

struct TqApplication {
  LaurentPoly denominator;
  std::vector<TqTerm> terms;  // m = -m_range .. m_range
};

TqApplication T_q_apply(const LaurentPoly& P, const Rational& q, int m_range);

// Numerical value of the truncated sum at complex q, x with weight q^{s m^2/2}.
cplx T_q_value(int j, cplx x, cplx q, int m_range, int weight_sign);

}  // namespace et::ops
