#include <string>

#include "theta/theta.hpp"
#include "verify/builder.hpp"

namespace et::verify::detail {

using namespace et::theta;

void theta_suite(Builder& b, const SuiteOptions& opt) {
  const Truncation& tr = opt.trunc;
  const cplx tau(0.3, 0.8);
  const cplx lam(0.2, 0.1);

  b.upper("jacobi_theta/zero_at_origin", "Jacobi theta is odd, so vanishes at 0",
          {{"lambda", "0"}, {"tau", cstr(tau)}}, 1e-14, false,
          [&] { return std::abs(jacobi_theta(0.0, tau, tr).value); });
  b.upper("jacobi_theta/odd", "Jacobi theta is odd", {{"lambda", cstr(lam)}, {"tau", cstr(tau)}}, 1e-13,
          false, [&] {
            return mixed_diff(jacobi_theta(-lam, tau, tr).value, -jacobi_theta(lam, tau, tr).value);
          });
  b.upper("jacobi_theta/antiperiodic", "theta(lambda+1) = -theta(lambda)",
          {{"lambda", cstr(lam)}, {"tau", cstr(tau)}}, 1e-13, false, [&] {
            return mixed_diff(jacobi_theta(lam + 1.0, tau, tr).value, -jacobi_theta(lam, tau, tr).value);
          });
  b.expect_error("jacobi_theta/lower_half_plane_rejected", "theta functions need Im tau > 0",
                 {{"lambda", cstr(lam)}, {"tau", "0.3-0.8i"}}, Errc::domain, false,
                 [&] { jacobi_theta(lam, std::conj(tau), tr); });

  // sample points for the level conditions
  Sampler rng(opt.seed);
  std::vector<cplx> samples;
  for (int i = 0; i < 10; ++i) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-0.4, 0.4) * tau.imag();
    samples.push_back(cplx(re, im));
  }

  b.upper("jacobi_theta/level_two", "Jacobi theta spans the odd level 2 theta functions",
          {{"tau", cstr(tau)}, {"samples", 10}, {"seed", opt.seed}, {"rs_range", 2}}, 1e-9, false,
          [&] { return level_residual([&](cplx l) { return theta::theta(l, tau); }, 2, tau, samples, 2); });

  const cplx ld(0.0, 0.15);
  b.upper("jacobi_theta_dlam/even", "derivative of an odd function is even",
          {{"lambda", cstr(ld)}, {"tau", cstr(tau)}}, 1e-13, false, [&] {
            return mixed_diff(jacobi_theta_dlam(-ld, tau, tr).value, jacobi_theta_dlam(ld, tau, tr).value);
          });
  b.lower("jacobi_theta_dlam/nonzero_at_origin", "theta'(0, tau) does not vanish",
          {{"tau", "0+0.8i"}}, 1e-3, false,
          [&] { return std::abs(jacobi_theta_dlam(0.0, cplx(0, 0.8), tr).value); });
  b.upper("jacobi_theta_dlam/finite_difference", "termwise derivative matches a central difference",
          {{"lambda", cstr(lam)}, {"tau", cstr(tau)}, {"step", 1e-5}}, 1e-8, false, [&] {
            const double h = 1e-5;
            const cplx fd = (jacobi_theta(lam + h, tau, tr).value - jacobi_theta(lam - h, tau, tr).value) / (2 * h);
            return rel_diff(fd, jacobi_theta_dlam(lam, tau, tr).value);
          });

  const cplx l2(0.2, 0.0), t2(0.0, 0.7);
  b.upper("theta_basis/jacobi_relation_level_four",
          "Jacobi theta equals i(theta_{-1,4} - theta_{1,4})",
          {{"lambda", cstr(l2)}, {"tau", cstr(t2)}}, 1e-10, true, [&] {
            const cplx lhs = jacobi_theta(l2, t2, tr).value;
            const cplx rhs = I * (theta_basis({-1, 4}, l2, t2, tr).value - theta_basis({1, 4}, l2, t2, tr).value);
            return Outcome(std::abs(lhs - rhs), "lhs " + cstr(lhs) + ", rhs " + cstr(rhs));
          });
  b.upper("theta_basis/jacobi_relation_level_two",
          "Jacobi theta equals i(theta_{-1,2} - theta_{1,2}) (level-consistent reading)",
          {{"lambda", cstr(l2)}, {"tau", cstr(t2)}}, 1e-10, false, [&] {
            const cplx lhs = jacobi_theta(l2, t2, tr).value;
            const cplx rhs = I * (theta_basis({-1, 2}, l2, t2, tr).value - theta_basis({1, 2}, l2, t2, tr).value);
            return std::abs(lhs - rhs);
          });
  b.upper("theta_basis/index_period", "theta_{j,kappa} depends on j mod 2 kappa",
          {{"j", 1}, {"kappa", 3}, {"lambda", "0.1"}, {"tau", "0+1i"}}, 1e-14, false, [&] {
            return mixed_diff(theta_basis_value(1, 3, 0.1, I), theta_basis_value(7, 3, 0.1, I));
          });
  b.upper("theta_basis/parity_split", "theta_{j,kappa}(-lambda) = theta_{-j,kappa}(lambda)",
          {{"kappa_max", 6}, {"tau", cstr(tau)}, {"samples", 10}, {"seed", opt.seed}}, 1e-12, false, [&] {
            double worst = 0.0;
            for (int k = 1; k <= 6; ++k)
              for (int j = 0; j < 2 * k; ++j)
                for (cplx l : samples)
                  worst = std::max(worst, mixed_diff(theta_basis_value(j, k, -l, tau),
                                                     theta_basis_value(-j, k, l, tau)));
            return worst;
          });

  for (int k = 1; k <= 6; ++k) {
    const std::string ks = std::to_string(k);
    b.upper("level_residual/theta_basis_kappa_" + ks,
            "theta_{j,kappa} satisfies the level kappa quasi-periodicity",
            {{"kappa", k}, {"j", "0.." + std::to_string(2 * k - 1)}, {"tau", cstr(tau)},
             {"samples", 10}, {"seed", opt.seed}, {"rs_range", 2}},
            1e-9, true, [&] {
              double worst = 0.0;
              for (int j = 0; j < 2 * k; ++j)
                worst = std::max(worst, level_residual([&](cplx l) { return theta_basis_value(j, k, l, tau); },
                                                       k, tau, samples, 2));
              return worst;
            });
  }
  b.upper("level_residual/constant_level_zero", "a constant is a level 0 theta function",
          {{"kappa", 0}, {"tau", cstr(tau)}}, 0.0, false,
          [&] { return level_residual([](cplx) { return cplx(1.0); }, 0, tau, samples, 2); });

  // Rank checks sample at 2 kappa + 2 generic points.
  for (int k = 1; k <= 6; ++k) {
    std::vector<cplx> pts;
    for (int i = 0; i < 2 * k + 2; ++i) pts.push_back(samples[i % 10] * 0.5 + cplx(0.037 * i, 0.011 * i));
    const std::string ks = std::to_string(k);
    const json p = {{"kappa", k}, {"tau", cstr(tau)}, {"points", 2 * k + 2}};
    struct Want {
      const char* tag;
      int parity, dim;
      const char* anchor;
    };
    for (const Want w : {Want{"full", 0, 2 * k, "Theta_kappa has dimension 2 kappa"},
                         Want{"even", 1, k + 1, "even level kappa theta functions have dimension kappa+1"},
                         Want{"odd", -1, k - 1, "odd level kappa theta functions have dimension kappa-1"}}) {
      b.upper(std::string("theta_basis/rank_") + w.tag + "_kappa_" + ks, w.anchor, p, 0.0, true, [&]() -> Outcome {
        const int r = theta_space_rank(k, tau, w.parity, pts);
        return {static_cast<double>(std::abs(r - w.dim)),
                "rank " + std::to_string(r) + ", expected " + std::to_string(w.dim)};
      });
    }
  }

  b.upper("theta0/inversion_symmetry", "theta0(x) = theta0(1/x)", {{"x", "2"}, {"q", "3"}}, 1e-12, false,
          [&] { return rel_diff(theta0(2.0, 3.0, tr).value, theta0(0.5, 3.0, tr).value); });
  b.upper("theta0/cutoff_doubling", "theta0 series is stable under cutoff doubling",
          {{"x", "1"}, {"q", "4"}}, 1e-12, false, [&] {
            Truncation t2x = tr;
            t2x.series_cutoff *= 2;
            return rel_diff(theta0(1.0, 4.0, tr).value, theta0(1.0, 4.0, t2x).value);
          });
  b.expect_error("theta0/divergent_for_small_q", "theta0 diverges for |q| < 1", {{"x", "1"}, {"q", "0.5"}},
                 Errc::divergence, false, [&] { theta0(1.0, 0.5, tr); });

  // E_kappa membership of a function built from the vanishing factorization
  const cplx te(0.0, 0.9), ee(0.0, -0.05);
  const int ke = 5;
  const ModularParams mp(te, ee, ke);
  const std::vector<cplx> es = {cplx(0.17, 0.0), cplx(-0.31, 0.12), cplx(0.44, -0.07)};
  b.upper("e_kappa_residual/factorized_member",
          "theta(l-2eta)theta(l)theta(l+2eta) g(l) with g even of level kappa-4 lies in E_kappa",
          {{"kappa", ke}, {"tau", cstr(te)}, {"eta", cstr(ee)}}, 1e-8, false, [&] {
            return e_kappa_residual(
                [&](cplx l) {
                  return theta::theta(l - 2.0 * ee, te) * theta::theta(l, te) * theta::theta(l + 2.0 * ee, te) *
                         theta_basis_value(0, ke - 4, l, te);
                },
                mp, es);
          });
  b.lower("e_kappa_residual/non_member", "theta_{1,kappa+2} does not vanish at 2 eta",
          {{"kappa", ke}, {"tau", cstr(te)}, {"eta", cstr(ee)}}, 1e-3, false, [&] {
            return e_kappa_residual([&](cplx l) { return theta_basis_value(1, ke + 2, l, te); }, mp, es);
          });
}

}  // namespace et::verify::detail
