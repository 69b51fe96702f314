#include "macdonald/macdonald.hpp"

#include <cmath>

#include "ellint/ellint.hpp"
#include "theta/theta.hpp"

namespace et::mac {

Rational ct_inner_product(const LaurentPoly& P, const LaurentPoly& Q, int m, const Rational& q) {
  if (m < 0) throw Error(Errc::argument, "m must be non-negative");
  LaurentPoly w(1);
  for (int i = 0; i < m; ++i) {
    const Rational c = rpow(q, 2 * i);
    w = w * (LaurentPoly(1) - LaurentPoly::monomial(2, c)) *
        (LaurentPoly(1) - LaurentPoly::monomial(-2, c));
  }
  return (P * Q.reflect() * w).constant_term();
}

std::vector<LaurentPoly> macdonald_general_all(int m, int jmax, const Rational& q) {
  if (jmax < 0) throw Error(Errc::argument, "j must be non-negative");
  std::vector<LaurentPoly> P;
  std::vector<Rational> norms;
  for (int k = 0; k <= jmax; ++k) {
    const LaurentPoly b = k == 0 ? LaurentPoly(1)
                                 : LaurentPoly::monomial(k) + LaurentPoly::monomial(-k);
    LaurentPoly p = b;
    for (std::size_t i = 0; i < P.size(); ++i)
      p -= P[i] * (ct_inner_product(b, P[i], m, q) / norms[i]);
    const Rational nn = ct_inner_product(p, p, m, q);
    if (nn == 0 && k < jmax)
      throw Error(Errc::domain, "degenerate q: vanishing Gram pivot at degree " + std::to_string(k));
    P.push_back(p);
    norms.push_back(nn);
  }
  return P;
}

LaurentPoly macdonald_general(int m, int j, const Rational& q) {
  return macdonald_general_all(m, j, q).back();
}

LaurentPoly pi_poly(const Rational& q) {
  const Rational qi = Rational(1) / q;
  const LaurentPoly a = LaurentPoly::monomial(1, q) - LaurentPoly::monomial(-1, qi);
  const LaurentPoly b = LaurentPoly::monomial(1) - LaurentPoly::monomial(-1);
  const LaurentPoly c = LaurentPoly::monomial(1, qi) - LaurentPoly::monomial(-1, q);
  return a * b * c;
}

LaurentPoly m2_numerator(int j, const Rational& q) {
  if (j < 0) throw Error(Errc::argument, "j must be non-negative");
  const Rational den = rpow(q, j + 1) - rpow(q, -j - 1);
  if (den == 0) throw Error(Errc::domain, "q^{j+1} = q^{-j-1}: coefficient a undefined");
  const Rational a = (rpow(q, j + 3) - rpow(q, -j - 3)) / den;
  return LaurentPoly::monomial(j + 3) - LaurentPoly::monomial(j + 1, a) +
         LaurentPoly::monomial(-j - 1, a) - LaurentPoly::monomial(-j - 3);
}

LaurentPoly macdonald_m2(int j, const Rational& q) {
  return m2_numerator(j, q).divide_exact(pi_poly(q));
}

cplx macdonald_m2_value(int j, cplx x, cplx q) {
  const cplx a = (std::pow(q, j + 3) - std::pow(q, -j - 3)) /
                 (std::pow(q, j + 1) - std::pow(q, -j - 1));
  const cplx num = std::pow(x, j + 3) - a * std::pow(x, j + 1) + a * std::pow(x, -j - 1) -
                   std::pow(x, -j - 3);
  const cplx Pi = (q * x - 1.0 / (q * x)) * (x - 1.0 / x) * (x / q - q / x);
  return num / Pi;
}

EllipticMacdonald::EllipticMacdonald(int kappa, cplx tau, cplx eta, const Truncation& tr)
    : h_(std::make_unique<hts::HtsEvaluator>(kappa, tau, eta, tr)) {}

EllipticMacdonald EllipticMacdonald::from_qp(int kappa, cplx q, cplx p, const Truncation& tr) {
  if (!(std::abs(p) < 1.0) || p == cplx(0.0)) throw Error(Errc::domain, "need 0 < |p| < 1");
  if (!(std::abs(q) < 1.0) || q == cplx(0.0)) throw Error(Errc::domain, "need 0 < |q| < 1");
  const cplx tau = std::log(p) / (2.0 * pi * I);
  const cplx eta = -std::log(q) / (2.0 * pi * I);
  return EllipticMacdonald(kappa, tau, eta, tr);
}

cplx EllipticMacdonald::normalization(int j) const {
  const double k = h_->kappa();
  const cplx tau = h_->tau(), eta = h_->eta();
  const double jj = static_cast<double>((j + 2) * (j + 2));
  return std::exp(-pi * I * (4.0 * eta + tau) * jj / (2.0 * k) + 3.0 * pi * I * tau / 4.0);
}

EvalResult EllipticMacdonald::value_lambda(int j, cplx lam) const {
  if (j < 0 || j > h_->kappa() - 4)
    throw Error(Errc::argument, "elliptic Macdonald index must lie in 0..kappa-4");
  const cplx tau = h_->tau(), eta = h_->eta();
  const cplx den = theta::theta(lam - 2.0 * eta, tau) * theta::theta(lam, tau) *
                   theta::theta(lam + 2.0 * eta, tau);
  if (std::abs(den) < h_->truncation().pinch_tol)
    throw Error(Errc::pole, "lambda lies on a zero of the denominator; use another representative");
  EvalResult r = h_->delta(j + 2, lam);
  const cplx f = normalization(j) / den;
  r.value *= f;
  r.err_estimate *= std::abs(f);
  return r;
}

EvalResult EllipticMacdonald::value(int j, cplx x) const {
  if (x == cplx(0.0)) throw Error(Errc::domain, "x must be nonzero");
  return value_lambda(j, std::log(x) / (pi * I));
}

TrigLimit trig_limit_ratio(int j, int kappa, cplx q, double p_small,
                           const std::vector<cplx>& x_samples, const Truncation& tr) {
  if (!(p_small > 0) || p_small > 1e-4) throw Error(Errc::argument, "p_small must lie in (0, 1e-4]");
  if (x_samples.empty()) throw Error(Errc::argument, "no x samples");
  const auto E = EllipticMacdonald::from_qp(kappa, q, p_small, tr);
  TrigLimit out;
  cplx mean = 0.0;
  for (const cplx x : x_samples) {
    const cplx d = macdonald_m2_value(j, x, q);
    if (std::abs(d) < 1e-12) throw Error(Errc::pole, "x sample at a zero of P_j^(2)");
    out.ratios.push_back(E.value(j, x).value / d);
    mean += out.ratios.back();
  }
  out.A_estimate = mean / static_cast<double>(x_samples.size());
  for (const cplx r : out.ratios) out.spread = std::max(out.spread, std::abs(r - out.A_estimate));
  return out;
}

}  // namespace et::mac
