#include "theta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/SVD>

#include "core/series.hpp"

namespace et::theta {

ModularParams::ModularParams(cplx tau_, cplx eta_, int kappa_)
    : tau(tau_), eta(eta_), kappa(kappa_) {
  if (!(tau.imag() > 0)) throw Error(Errc::domain, "Im tau must be positive");
  if (kappa < 4) throw Error(Errc::argument, "kappa must be >= 4");
}

int ModularParams::im_eta_sign() const {
  return (eta.imag() > 0) - (eta.imag() < 0);
}

int ModularParams::im_eta_over_tau_sign() const {
  const double v = (eta / tau).imag();
  return (v > 0) - (v < 0);
}

ThetaLevelIndex::ThetaLevelIndex(int j_, int kappa_) : kappa(kappa_) {
  if (kappa < 1) throw Error(Errc::argument, "kappa must be >= 1");
  const int m = 2 * kappa;
  j = ((j_ % m) + m) % m;
}

cplx gauss_sum(cplx a, cplx b, double offset, int deriv) {
  const double ra = a.real();
  if (!(ra < 0)) throw Error(Errc::domain, "Gaussian sum needs Re a < 0");
  const double peak = -b.real() / (2.0 * ra);
  const double n0 = offset + std::round(peak - offset);
  const int width = static_cast<int>(std::sqrt(42.0 / -ra)) + 2;
  const cplx e2a = std::exp(2.0 * a);

  const cplx t0 = std::exp(a * (n0 * n0) + b * n0);
  cplx s = deriv ? n0 * t0 : t0;

  // upward: t(n+1) = t(n) * exp(a(2n+1) + b)
  cplx t = t0;
  cplx r = std::exp(a * (2.0 * n0 + 1.0) + b);
  for (int k = 1; k <= width; ++k) {
    t *= r;
    r *= e2a;
    s += deriv ? (n0 + k) * t : t;
  }
  // downward: t(n-1) = t(n) * exp(a(1-2n) - b)
  t = t0;
  r = std::exp(a * (1.0 - 2.0 * n0) - b);
  for (int k = 1; k <= width; ++k) {
    t *= r;
    r *= e2a;
    s += deriv ? (n0 - k) * t : t;
  }
  return s;
}

cplx theta(cplx lam, cplx tau) {
  return -gauss_sum(pi * I * tau, pi * I * (2.0 * lam + 1.0), 0.5);
}

cplx theta_dlam(cplx lam, cplx tau) {
  return -2.0 * pi * I * gauss_sum(pi * I * tau, pi * I * (2.0 * lam + 1.0), 0.5, 1);
}

cplx theta_basis_value(int j, int kappa, cplx lam, cplx tau) {
  const double k = kappa;
  return gauss_sum(2.0 * pi * I * k * tau, 2.0 * pi * I * k * lam,
                   static_cast<double>(j) / (2.0 * k));
}

namespace {

void require_tau(cplx tau) {
  if (!(tau.imag() > 0)) throw Error(Errc::domain, "Im tau must be positive");
}

// Index of the Gaussian peak for the term exp(a n^2 + b n), n in Z + offset.
double peak_index(cplx a, cplx b, double offset) {
  return offset + std::round(-b.real() / (2.0 * a.real()) - offset);
}

}  // namespace

EvalResult jacobi_theta(cplx lam, cplx tau, const Truncation& tr) {
  require_tau(tau);
  const cplx a = pi * I * tau, b = pi * I * (2.0 * lam + 1.0);
  const double n0 = peak_index(a, b, 0.5);
  auto r = sum_Z_series(
      [&](int m) {
        const double n = n0 + m;
        return -std::exp(a * (n * n) + b * n);
      },
      tr);
  return r;
}

EvalResult jacobi_theta_dlam(cplx lam, cplx tau, const Truncation& tr) {
  require_tau(tau);
  const cplx a = pi * I * tau, b = pi * I * (2.0 * lam + 1.0);
  const double n0 = peak_index(a, b, 0.5);
  return sum_Z_series(
      [&](int m) {
        const double n = n0 + m;
        return -2.0 * pi * I * n * std::exp(a * (n * n) + b * n);
      },
      tr);
}

EvalResult theta_basis(const ThetaLevelIndex& idx, cplx lam, cplx tau,
                       const Truncation& tr) {
  require_tau(tau);
  const double k = idx.kappa;
  const cplx a = 2.0 * pi * I * k * tau, b = 2.0 * pi * I * k * lam;
  const double n0 = peak_index(a, b, idx.j / (2.0 * k));
  return sum_Z_series(
      [&](int m) {
        const double n = n0 + m;
        return std::exp(a * (n * n) + b * n);
      },
      tr);
}

EvalResult theta0(cplx x, cplx q, const Truncation& tr) {
  if (!(std::abs(q) > 1.0))
    throw Error(Errc::divergence, "theta0 diverges for |q| <= 1");
  if (x == cplx(0.0)) throw Error(Errc::argument, "theta0 needs x != 0");
  const cplx lq = std::log(q), lx = std::log(x);
  return sum_Z_series(
      [&](int m) {
        const double md = m;
        return std::exp(md * lx - 0.5 * md * md * lq);
      },
      tr);
}

double level_residual(const Fn& f, int kappa, cplx tau,
                      const std::vector<cplx>& samples, int rs_range) {
  double worst = 0.0;
  for (cplx lam : samples) {
    const cplx f0 = f(lam);
    for (int r = -rs_range; r <= rs_range; ++r)
      for (int s = -rs_range; s <= rs_range; ++s) {
        const cplx shifted = f(lam + 2.0 * r + 2.0 * s * tau);
        const double sd = s;
        const cplx undo =
            std::exp(2.0 * pi * I * static_cast<double>(kappa) * (sd * sd * tau + sd * lam));
        worst = std::max(worst, std::abs(shifted * undo - f0) / (1.0 + std::abs(f0)));
      }
  }
  return worst;
}

double EKappaParts::total() const {
  return std::max({level, oddness, vanishing});
}

EKappaParts e_kappa_parts(const Fn& f, const ModularParams& p,
                          const std::vector<cplx>& samples) {
  EKappaParts out;
  out.level = level_residual(f, p.kappa + 2, p.tau, samples, 1);
  double scale = 0.0;
  for (cplx lam : samples) {
    const cplx a = f(lam), b = f(-lam);
    scale = std::max(scale, std::abs(a));
    out.oddness = std::max(out.oddness, std::abs(a + b));
  }
  for (int j = -1; j <= 1; ++j)
    for (int r = -1; r <= 1; ++r)
      for (int s = -1; s <= 1; ++s) {
        const cplx z = 2.0 * p.eta * static_cast<double>(j) + static_cast<double>(r) +
                       static_cast<double>(s) * p.tau;
        out.vanishing = std::max(out.vanishing, std::abs(f(z)));
      }
  out.oddness /= 1.0 + scale;
  out.vanishing /= 1.0 + scale;
  return out;
}

double e_kappa_residual(const Fn& f, const ModularParams& p,
                        const std::vector<cplx>& samples) {
  return e_kappa_parts(f, p, samples).total();
}

}  // namespace et::theta


namespace et::theta {

int numerical_rank(const std::vector<Fn>& fs, const std::vector<cplx>& samples, double rel_tol,
                   double abs_floor) {
  if (fs.empty()) return 0;
  if (samples.size() < fs.size())
    throw Error(Errc::argument, "rank check needs at least as many samples as functions");
  Eigen::MatrixXcd M(samples.size(), fs.size());
  for (std::size_t c = 0; c < fs.size(); ++c)
    for (std::size_t r = 0; r < samples.size(); ++r) M(r, c) = fs[c](samples[r]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * std::max(s(0), abs_floor)) ++rank;
  return rank;
}

int theta_space_rank(int kappa, cplx tau, int parity, const std::vector<cplx>& samples) {
  // parity parts may vanish identically, so the threshold follows the size
  // of the basis itself
  double scale = 0.0;
  for (int j = 0; j < 2 * kappa; ++j)
    for (cplx l : samples) scale = std::max(scale, std::abs(theta_basis_value(j, kappa, l, tau)));
  std::vector<Fn> fs;
  for (int j = 0; j < 2 * kappa; ++j) {
    if (parity == 0)
      fs.push_back([=](cplx l) { return theta_basis_value(j, kappa, l, tau); });
    else
      fs.push_back([=](cplx l) {
        return theta_basis_value(j, kappa, l, tau) +
               static_cast<double>(parity) * theta_basis_value(j, kappa, -l, tau);
      });
  }
  return numerical_rank(fs, samples, 1e-9, scale);
}

}  // namespace et::theta
