#include "modular/modular.hpp"

#include <array>
#include <cmath>

#include "ellint/ellint.hpp"

namespace et::modular {

cplx sqrt_pos(cplx z) {
  const cplx r = std::sqrt(z);
  return r.real() >= 0 ? r : -r;
}

cplx psi(cplx tau, cplx p, cplx eta) {
  return 2.0 * (8.0 * eta * eta + tau * tau + p * p - 3.0 * p + 3.0 * tau + 3.0 * tau * p + 1.0);
}

namespace {

cplx C_common(int kappa, cplx tau, cplx eta, double sign) {
  const double k = kappa;
  const cplx p = -sign * 2.0 * eta * k;
  const cplx ps = sign > 0 ? psi(tau, p, eta) : psi(-tau, p, eta);
  return -2.0 * pi * I * sqrt_pos(2.0 * k * I / tau) *
         std::exp(pi * I * 2.0 * eta / k +
                  pi * I / tau * 4.0 * eta * eta * (1.0 - sign / (2.0 * eta * k)) +
                  pi * I / (6.0 * k * tau) * ps);
}

Matrix S_common(int kappa, cplx tau, cplx eta, const Truncation& tr, double sign) {
  const double k = kappa;
  const cplx tp = 1.0 / (2.0 * eta * k);
  const cplx sp = sign * tau / (2.0 * eta * k);
  const cplx ep = -sign / (2.0 * k);
  const ellint::UKernel K(tp, sp, ep, tr);
  const int n = kappa - 3;
  Matrix S(n, std::vector<cplx>(n));
  for (int l = 2; l <= kappa - 2; ++l) {
    const cplx q = ellint::q_weight(l / k, sp, ep, tr).value;
    const auto bp = K.sigma_side(l / k), bm = K.sigma_side(-l / k);
    for (int j = 2; j <= kappa - 2; ++j) {
      const auto a = K.tau_side(j / k);
      const cplx um = std::exp(-pi * I * (j / k) * (-l / k) / (2.0 * ep)) * K.contract(a, bm);
      const cplx up = std::exp(-pi * I * (j / k) * (l / k) / (2.0 * ep)) * K.contract(a, bp);
      S[j - 2][l - 2] = q * (um - up);
    }
  }
  return S;
}

double im_ratio(cplx eta, cplx tau) { return (eta / tau).imag(); }

}  // namespace

cplx C_minus(int kappa, cplx tau, cplx eta) { return C_common(kappa, tau, eta, 1.0); }
cplx C_plus(int kappa, cplx tau, cplx eta) { return C_common(kappa, tau, eta, -1.0); }

Matrix S_minus_matrix(int kappa, cplx tau, cplx eta, const Truncation& tr) {
  if (!(im_ratio(eta, tau) < 0)) throw Error(Errc::domain, "S^- needs Im(eta/tau) < 0");
  return S_common(kappa, tau, eta, tr, 1.0);
}

Matrix S_plus_matrix(int kappa, cplx tau, cplx eta, const Truncation& tr) {
  if (!(im_ratio(eta, tau) > 0)) throw Error(Errc::domain, "S^+ needs Im(eta/tau) > 0");
  return S_common(kappa, tau, eta, tr, -1.0);
}

bool DeltaFamily::Less::operator()(const std::pair<cplx, cplx>& a,
                                   const std::pair<cplx, cplx>& b) const {
  auto key = [](const std::pair<cplx, cplx>& p) {
    return std::array<double, 4>{p.first.real(), p.first.imag(), p.second.real(), p.second.imag()};
  };
  return key(a) < key(b);
}

const hts::HtsEvaluator& DeltaFamily::at(cplx tau, cplx eta) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = cache_[{tau, eta}];
  if (!slot) slot = std::make_unique<hts::HtsEvaluator>(kappa_, tau, eta, tr_);
  return *slot;
}

Field DeltaFamily::field(int l) {
  return [this, l](cplx lam, cplx tau, cplx eta) { return delta(l, lam, tau, eta); };
}

const char* op_name(Op op) {
  switch (op) {
    case Op::A: return "A";
    case Op::B: return "B";
    case Op::T: return "T";
    case Op::S: return "S";
  }
  return "?";
}

Field transform(Op op, const Field& f, int kappa) {
  const double k2 = kappa + 2;
  switch (op) {
    case Op::A:
      return [f](cplx lam, cplx tau, cplx eta) { return f(lam + 1.0, tau, eta); };
    case Op::B:
      return [f, k2](cplx lam, cplx tau, cplx eta) {
        return std::exp(pi * I * k2 * (lam + tau / 2.0)) * f(lam + tau, tau, eta);
      };
    case Op::T:
      return [f](cplx lam, cplx tau, cplx eta) { return f(lam, tau + 1.0, eta); };
    case Op::S:
      return [f, k2, kappa](cplx lam, cplx tau, cplx eta) {
        const double r = im_ratio(eta, tau);
        if (r == 0.0 || std::abs(r) < 1e-14)
          throw Error(Errc::domain, "S: sign rule indeterminate (Im eta/tau = 0)");
        const bool plus = r > 0;
        const cplx c = plus ? C_plus(kappa, tau, eta) : C_minus(kappa, tau, eta);
        const cplx e2 = plus ? -eta / tau : eta / tau;
        return c * std::exp(-pi * I * k2 * lam * lam / (2.0 * tau)) * f(lam / tau, -1.0 / tau, e2);
      };
  }
  throw Error(Errc::argument, "unknown transform");
}

Field compose(const std::vector<Op>& ops, const Field& f, int kappa) {
  Field g = f;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) g = transform(*it, g, kappa);
  return g;
}

double check_T_shift(int l, DeltaFamily& fam, cplx tau, cplx eta, const std::vector<cplx>& lams) {
  const double k = fam.kappa();
  const cplx ph = std::exp(pi * I * static_cast<double>(l * l) / (2.0 * k));
  double worst = 0.0;
  for (const cplx lam : lams) {
    const cplx lhs = fam.delta(l, lam, tau + 1.0, eta);
    const cplx rhs = ph * fam.delta(l, lam, tau, eta);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

double check_S_transform(SForm form, int l, DeltaFamily& fam, cplx tau, cplx eta,
                         const std::vector<cplx>& lams, double c_scale) {
  const int kappa = fam.kappa();
  const double k2 = kappa + 2;
  const double r = im_ratio(eta, tau);
  bool plus = form == SForm::plus;
  if (form == SForm::op) {
    if (r == 0.0) throw Error(Errc::domain, "S: sign rule indeterminate (Im eta/tau = 0)");
    plus = r > 0;
  }
  const Matrix S = plus ? S_plus_matrix(kappa, tau, eta, fam.truncation())
                        : S_minus_matrix(kappa, tau, eta, fam.truncation());
  const cplx c = c_scale * (plus ? C_plus(kappa, tau, eta) : C_minus(kappa, tau, eta));
  const cplx e2 = plus ? -eta / tau : eta / tau;
  double worst = 0.0;
  for (const cplx lam : lams) {
    const cplx lhs = c * std::exp(-pi * I * k2 * lam * lam / (2.0 * tau)) *
                     fam.delta(l, lam / tau, -1.0 / tau, e2);
    cplx rhs = 0.0;
    for (int j = 2; j <= kappa - 2; ++j) rhs += fam.delta(j, lam, tau, eta) * S[j - 2][l - 2];
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

std::vector<RelationResult> group_relations(DeltaFamily& fam, cplx tau, cplx eta,
                                            const std::vector<cplx>& lams,
                                            const std::vector<int>& ls) {
  const int kappa = fam.kappa();
  const double k = kappa;
  struct Rel {
    std::string name;
    std::vector<Op> lhs, rhs;
    cplx factor;  // lhs = factor * rhs
  };
  const std::vector<Rel> rels = {
      {"A^2 = 1", {Op::A, Op::A}, {}, 1.0},
      {"AT = TA", {Op::A, Op::T}, {Op::T, Op::A}, 1.0},
      {"S^2 = 8 pi^2 kappa", {Op::S, Op::S}, {}, 8.0 * pi * pi * k},
      {"SA = BS", {Op::S, Op::A}, {Op::B, Op::S}, 1.0},
      {"AB = (-1)^kappa BA", {Op::A, Op::B}, {Op::B, Op::A}, kappa % 2 ? -1.0 : 1.0},
      {"TB = -e^{pi i kappa/2} BAT", {Op::T, Op::B}, {Op::B, Op::A, Op::T},
       -std::exp(pi * I * k / 2.0)},
      {"(ST)^3 = 8 pi^3 kappa^{3/2} e^{2 pi i/kappa - pi i/4}",
       {Op::S, Op::T, Op::S, Op::T, Op::S, Op::T}, {},
       8.0 * pi * pi * pi * std::pow(k, 1.5) * std::exp(2.0 * pi * I / k - pi * I / 4.0)},
  };
  std::vector<RelationResult> out;
  for (const auto& rel : rels) {
    RelationResult res;
    res.name = rel.name;
    try {
      for (const int l : ls) {
        const Field f = fam.field(l);
        const Field L = compose(rel.lhs, f, kappa), R = compose(rel.rhs, f, kappa);
        for (const cplx lam : lams) {
          const cplx a = L(lam, tau, eta), b = rel.factor * R(lam, tau, eta);
          res.residual = std::max(res.residual, std::abs(a - b) / std::abs(b));
        }
      }
    } catch (const Error& e) {
      res.evaluated = false;
      res.note = std::string(errc_name(e.code())) + ": " + e.what();
    }
    out.push_back(res);
  }
  return out;
}

}  // namespace et::modular
