#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hts/hts.hpp"

namespace et::modular {

// square root with non-negative real part
cplx sqrt_pos(cplx z);

// 2 (8 eta^2 + tau^2 + p^2 - 3p + 3tau + 3 tau p + 1)
cplx psi(cplx tau, cplx p, cplx eta);

cplx C_minus(int kappa, cplx tau, cplx eta);
cplx C_plus(int kappa, cplx tau, cplx eta);

// Rows j, columns l, both running over 2..kappa-2 (entry [j-2][l-2]).
using Matrix = std::vector<std::vector<cplx>>;
Matrix S_minus_matrix(int kappa, cplx tau, cplx eta, const Truncation& tr);
Matrix S_plus_matrix(int kappa, cplx tau, cplx eta, const Truncation& tr);

// A function of (lambda, tau, eta).
using Field = std::function<cplx(cplx, cplx, cplx)>;

// Evaluators for Delta_{l,kappa} at every parameter point that is visited,
// built on first use.
class DeltaFamily {
 public:
  DeltaFamily(int kappa, const Truncation& tr) : kappa_(kappa), tr_(tr) {}
  int kappa() const { return kappa_; }
  const Truncation& truncation() const { return tr_; }
  const hts::HtsEvaluator& at(cplx tau, cplx eta);
  cplx delta(int l, cplx lam, cplx tau, cplx eta) { return at(tau, eta).delta(l, lam).value; }
  Field field(int l);
  std::size_t size() const { return cache_.size(); }

 private:
  struct Less {
    bool operator()(const std::pair<cplx, cplx>& a, const std::pair<cplx, cplx>& b) const;
  };
  int kappa_;
  Truncation tr_;
  std::mutex mu_;
  std::map<std::pair<cplx, cplx>, std::unique_ptr<hts::HtsEvaluator>, Less> cache_;
};

enum class Op { A, B, T, S };
const char* op_name(Op op);
Field transform(Op op, const Field& f, int kappa);
// Applies ops right to left: compose({S, T}, f) = S(T(f)).
Field compose(const std::vector<Op>& ops, const Field& f, int kappa);

// max over lambda of |Delta(lambda, tau+1) - e^{pi i l^2/2kappa} Delta(lambda, tau)| / |rhs|
double check_T_shift(int l, DeltaFamily& fam, cplx tau, cplx eta, const std::vector<cplx>& lams);

enum class SForm { minus, plus, op };

// minus: C^- e^{...} Delta_l(lambda/tau, -1/tau, eta/tau) = sum_j Delta_j(lambda) S^-_{j,l}
// plus:  the same with C^+, -eta/tau and S^+
// op:    the S operator with the sign rule against both matrices' choice
// c_scale multiplies the constant on the left (0 gives the degenerate control).
double check_S_transform(SForm form, int l, DeltaFamily& fam, cplx tau, cplx eta,
                         const std::vector<cplx>& lams, double c_scale = 1.0);

struct RelationResult {
  std::string name;
  double residual = 0.0;
  bool evaluated = true;
  std::string note;
};

// Projective relations among A, B, T, S on the Delta basis.
std::vector<RelationResult> group_relations(DeltaFamily& fam, cplx tau, cplx eta,
                                            const std::vector<cplx>& lams,
                                            const std::vector<int>& ls);

}  // namespace et::modular
