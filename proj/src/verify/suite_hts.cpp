#include <memory>
#include <string>

#include "hts/hts.hpp"
#include "theta/theta.hpp"
#include "verify/builder.hpp"

namespace et::verify::detail {

using namespace et::hts;

void hts_suite(Builder& b, const SuiteOptions& opt) {
  const Truncation& tr = opt.trunc;
  const int kappa = opt.kappa;
  const cplx tau(0, 0.9), eta(0, -0.05);
  const json base = {{"kappa", kappa}, {"tau", cstr(tau)}, {"eta", cstr(eta)}};
  auto with = [&](json extra) {
    json j = base;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  };

  b.exact("is_admissible/l2_kappa5", "l is admissible iff l != +-1 mod kappa", {{"l", 2}, {"kappa", 5}}, false,
          [] { return is_admissible(2, 5); });
  b.exact("is_admissible/l6_kappa5", "l is admissible iff l != +-1 mod kappa", {{"l", 6}, {"kappa", 5}}, false,
          [] { return !is_admissible(6, 5); });
  b.exact("is_admissible/lm1_kappa7", "l is admissible iff l != +-1 mod kappa", {{"l", -1}, {"kappa", 7}}, false,
          [] { return !is_admissible(-1, 7); });

  std::unique_ptr<HtsEvaluator> h;
  std::string herr;
  try {
    h = std::make_unique<HtsEvaluator>(kappa, tau, eta, tr);
  } catch (const Error& e) {
    herr = std::string(errc_name(e.code())) + ": " + e.what();
  }
  auto H = [&]() -> const HtsEvaluator& {
    if (!h) throw Error(Errc::domain, herr);
    return *h;
  };

  b.expect_error("delta_tilde/inadmissible_rejected", "Delta~ is defined for admissible l only",
                 with({{"l", 1}}), Errc::argument, false, [&] { H().delta_tilde(1, 0.17); });
  b.expect_error("delta_tilde/positive_eta_rejected", "the theory assumes Im eta < 0",
                 {{"kappa", kappa}, {"tau", cstr(tau)}, {"eta", cstr(-eta)}}, Errc::domain, false,
                 [&] { HtsEvaluator(kappa, tau, -eta, tr); });

  const cplx lam = 0.17;
  const std::vector<cplx> lams = {0.17, cplx(-0.29, 0.08), cplx(0.41, -0.05)};
  std::vector<int> ls;
  for (int l = 2; l <= kappa - 2; ++l) ls.push_back(l);

  for (const int l : ls) {
    const std::string ltag = "_l" + std::to_string(l);
    b.upper("delta_tilde/reflection" + ltag, "Delta~_l(-lambda) = Delta~_{-l}(lambda)",
            with({{"l", l}, {"lambda", cstr(lam)}}), 1e-6, false,
            [&] { return rel_diff(H().delta_tilde(l, -lam).value, H().delta_tilde(-l, lam).value); });
    b.upper("delta_tilde/index_period" + ltag, "Delta~_l = Delta~_{l+2kappa}",
            with({{"l", l}, {"lambda", cstr(lam)}}), 1e-12, false,
            [&] { return rel_diff(H().delta_tilde(l, lam).value, H().delta_tilde(l + 2 * kappa, lam).value); });
    b.upper("delta_tilde/series_vs_integral" + ltag,
            "series and integral representations of Delta~ agree",
            with({{"l", l}, {"lambda", json::array({cstr(lams[0]), cstr(lams[1]), cstr(lams[2])})}}), 1e-6, true,
            [&]() -> Outcome {
              double worst = 0.0;
              for (cplx x : lams)
                worst = std::max(worst, rel_diff(H().delta_tilde(l, x, Method::series).value,
                                                 H().delta_tilde(l, x, Method::integral).value));
              return {worst, std::string("series form ") + H().series_form()};
            });
    b.upper("I_regularized/equals_integral" + ltag, "regularized integral equals I_{l,kappa}",
            with({{"l", l}, {"lambda", cstr(lam)}}), 1e-7, false,
            [&] { return rel_diff(H().I_regularized(l, lam).value, H().I_integral(l, lam).value); });
    b.upper("I_integral/level" + ltag, "I_{l,kappa} is a theta function of level kappa+2",
            with({{"l", l}, {"rs_range", 1}}), 1e-6, false, [&] {
              return theta::level_residual([&](cplx x) { return H().I_integral(l, x).value; }, kappa + 2, tau,
                                           lams, 1);
            });
    b.upper("delta/odd_at_zero" + ltag, "Delta is odd, so vanishes at 0", with({{"l", l}}), 1e-14, false,
            [&] { return std::abs(H().delta(l, 0.0).value); });
    b.upper("delta/vanishing_at_2eta" + ltag, "Delta vanishes at 2 eta", with({{"l", l}, {"lambda", "2 eta"}}),
            1e-6, false, [&] {
              double scale = 0.0;
              for (cplx x : lams) scale = std::max(scale, std::abs(H().delta(l, x).value));
              return std::abs(H().delta(l, 2.0 * eta).value) / std::max(scale, 1e-300);
            });
    b.upper("e_kappa_residual/delta" + ltag, "Delta_{l,kappa} lie in E_kappa(tau, eta)",
            with({{"l", l}, {"samples", 3}}), 1e-6, true, [&] {
              return theta::e_kappa_residual([&](cplx x) { return H().delta(l, x).value; },
                                             theta::ModularParams(tau, eta, kappa), lams);
            });
  }
  b.upper("delta/series_form_recorded", "the decaying printed series form is summed", base, 0.0, false,
          [&]() -> Outcome { return {0.0, std::string("form ") + H().series_form()}; });

  // dim E_kappa = kappa - 3
  b.upper("delta/rank_e_kappa", "Delta_{l,kappa}, l = 2..kappa-2, form a basis of E_kappa", base, 0.0, false,
          [&]() -> Outcome {
            std::vector<theta::Fn> fs;
            for (const int l : ls) fs.push_back([&, l](cplx x) { return H().delta(l, x).value; });
            std::vector<cplx> pts;
            for (int i = 0; i < kappa; ++i) pts.push_back(cplx(0.09 + 0.13 * i, 0.03 * (i % 3) - 0.02));
            const int r = theta::numerical_rank(fs, pts);
            return {static_cast<double>(std::abs(r - (kappa - 3))), "rank " + std::to_string(r)};
          });

  // Gram matrix of the inversion relation
  std::unique_ptr<GramEvaluator> g;
  if (h) {
    try {
      g = std::make_unique<GramEvaluator>(*h);
    } catch (const Error& e) {
      herr = std::string(errc_name(e.code())) + ": " + e.what();
    }
  }
  auto G = [&]() -> const GramEvaluator& {
    if (!g) throw Error(Errc::evaluation, herr);
    return *g;
  };
  for (const int l : ls)
    for (const int j : ls) {
      const std::string tag = "_" + std::to_string(l) + std::to_string(j);
      const cplx expected =
          l == j ? std::exp(pi * I * (4.0 * eta + tau) * static_cast<double>(j * j) / (2.0 * kappa)) : cplx(0.0);
      const json p = with({{"l", l}, {"j", j}, {"samples", GramOptions{}.samples}});
      b.upper("gram_inversion/entry" + tag,
              "inversion relation: the pairing equals delta_{lj} e^{pi i(4eta+tau) j^2/2kappa}", p, 1e-6, true,
              [&]() -> Outcome {
                const cplx v = G().entry(l, j).value;
                return {std::abs(v - expected), "value " + cstr(v) + ", expected " + cstr(expected)};
              });
      b.upper("gram_inversion/entry_normalized" + tag,
              "inversion relation with the prefactor -1/(8 pi^2) in place of 1/(32 pi^2 eta)", p, 1e-6, false,
              [&] { return std::abs(-4.0 * eta * G().entry(l, j).value - expected); });
    }
}

}  // namespace et::verify::detail
