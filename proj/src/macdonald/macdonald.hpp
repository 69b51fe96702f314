#pragma once

#include <memory>
#include <vector>

#include "hts/hts.hpp"
#include "macdonald/laurent.hpp"

namespace et::mac {

// constant term of P(x) Q(1/x) prod_{i<m} (1 - q^{2i} x^2)(1 - q^{2i} x^-2)
Rational ct_inner_product(const LaurentPoly& P, const LaurentPoly& Q, int m, const Rational& q);

// Gram-Schmidt on 1, x+1/x, x^2+1/x^2, ... under ct_inner_product.
LaurentPoly macdonald_general(int m, int j, const Rational& q);
std::vector<LaurentPoly> macdonald_general_all(int m, int jmax, const Rational& q);

// (q x - 1/(q x))(x - 1/x)(x/q - q/x)
LaurentPoly pi_poly(const Rational& q);
// numerator x^{j+3} - a x^{j+1} + a x^{-j-1} - x^{-j-3}
LaurentPoly m2_numerator(int j, const Rational& q);
// Closed form for m = 2: numerator divided exactly by pi_poly.
LaurentPoly macdonald_m2(int j, const Rational& q);
// Same closed form evaluated in floating point for complex q.
cplx macdonald_m2_value(int j, cplx x, cplx q);

// P_{j,kappa}(x, q, p) through Delta_{j+2,kappa}.
class EllipticMacdonald {
 public:
  EllipticMacdonald(int kappa, cplx tau, cplx eta, const Truncation& tr);
  // x = e^{pi i lambda}, q = e^{-2 pi i eta}, p = e^{2 pi i tau}, principal logs
  static EllipticMacdonald from_qp(int kappa, cplx q, cplx p, const Truncation& tr);

  EvalResult value(int j, cplx x) const;           // x -> lambda by the principal log
  EvalResult value_lambda(int j, cplx lam) const;  // evaluated directly at lambda
  const hts::HtsEvaluator& hts() const { return *h_; }
  // e^{-pi i (4 eta + tau)(j+2)^2 / 2 kappa + 3 pi i tau / 4}
  cplx normalization(int j) const;

 private:
  std::unique_ptr<hts::HtsEvaluator> h_;
};

struct TrigLimit {
  cplx A_estimate;
  double spread = 0.0;
  std::vector<cplx> ratios;
};

TrigLimit trig_limit_ratio(int j, int kappa, cplx q, double p_small,
                           const std::vector<cplx>& x_samples, const Truncation& tr);

}  // namespace et::mac
