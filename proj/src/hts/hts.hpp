#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ellint/ellint.hpp"
#include "theta/theta.hpp"

namespace et::hts {

struct HTSIndex {
  int l = 0;
  int kappa = 4;
  HTSIndex(int l, int kappa);  // stores 0 <= l < 2 kappa
  bool admissible() const;
};

bool is_admissible(int l, int kappa);

enum class Method { series, integral, regularized };
const char* method_name(Method m);

// J used for the hypothesis "j tau + 4 eta not an integer, j = 1..J".
int hypothesis_check_range(cplx tau, cplx eta);

// Hypergeometric theta functions at a fixed point (kappa, tau, eta).
// Kernels are built once; per-index series data is cached on first use.
class HtsEvaluator {
 public:
  HtsEvaluator(int kappa, cplx tau, cplx eta, const Truncation& tr);

  int kappa() const { return kappa_; }
  cplx tau() const { return tau_; }
  cplx eta() const { return eta_; }
  cplx sigma() const { return sigma_; }
  const Truncation& truncation() const { return tr_; }
  const ellint::UKernel& kernel() const { return *kernel_; }

  EvalResult delta_tilde(int l, cplx lam, Method m = Method::series) const;
  EvalResult delta(int l, cplx lam, Method m = Method::series) const;
  EvalResult I_integral(int l, cplx lam) const;
  EvalResult I_regularized(int l, cplx lam) const;

  // Which printed series form was summed: "tau+4eta" or "tau-4eta".
  const char* series_form() const;

 private:
  struct SeriesData {
    std::vector<cplx> coef;                // per-j scalar factor
    std::vector<int> js;                   // j = l + 2 kappa k
    std::vector<std::vector<cplx>> wsig;   // weight_i * theta(2 eta j + t_i, sigma)
    cplx global = 1.0;
  };
  struct IntegralData {
    std::vector<cplx> w;  // weight_i * theta(2 eta l + t_i, sigma) e^{-2 pi i l t_i/kappa}
  };
  struct RegData {
    std::vector<cplx> t, w;  // shifted-line nodes, kernel weights incl. l-factors
    cplx theta4eta;
  };

  void check_index(int l) const;
  const SeriesData& series_data(int l) const;
  const IntegralData& integral_data(int l) const;
  const RegData& reg_data(int l) const;
  const ellint::UKernel& reg_kernel() const;

  int kappa_;
  cplx tau_, eta_, sigma_;
  Truncation tr_;
  bool plus_form_ = false;
  std::unique_ptr<ellint::UKernel> kernel_;

  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<SeriesData>> series_;
  mutable std::map<int, std::unique_ptr<IntegralData>> integral_;
  mutable std::map<int, std::unique_ptr<RegData>> reg_;
  mutable std::unique_ptr<ellint::UKernel> reg_kernel_;
};

// (1/(32 pi^2 eta)) int_0^2 u(-mu, 2eta l, tau, -2eta kappa, -eta)
//   Delta_j(mu) Q(mu, tau, eta) dmu, as twice the constant Fourier
// coefficient sampled on Im mu = c with `samples` equispaced nodes.
struct GramOptions {
  int samples = 128;
  double height = -1.0;  // < 0: 3 |Im eta|
};

class GramEvaluator {
 public:
  GramEvaluator(const HtsEvaluator& h, GramOptions opt = {});
  EvalResult entry(int l, int j) const;
  // The same integral with Delta_j(mu) Q(mu) replaced by an arbitrary
  // 2-periodic function g(mu) sampled on the nodes.
  cplx integrate(int l, const std::vector<cplx>& g_on_nodes) const;
  const std::vector<cplx>& nodes() const { return mu_; }
  const HtsEvaluator& hts() const { return h_; }

 private:
  const HtsEvaluator& h_;
  std::unique_ptr<ellint::UKernel> kminus_;
  std::vector<cplx> mu_;
  std::vector<std::vector<cplx>> lam_side_;  // theta(-mu_k + t_i, tau)
};

}  // namespace et::hts
