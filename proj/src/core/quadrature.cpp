#include "core/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace et {

void Rule::append(const Rule& other) {
  t.insert(t.end(), other.t.begin(), other.t.end());
  w.insert(w.end(), other.w.begin(), other.w.end());
}

namespace {

template <int N>
void gl_fill(std::vector<double>& x, std::vector<double>& w) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& wt = G::weights();
  x.clear();
  w.clear();
  // boost stores the non-negative half
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0.0) continue;
    x.push_back(-a[i]);
    w.push_back(wt[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    x.push_back(a[i]);
    w.push_back(wt[i]);
  }
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  switch (n) {
    case 8: gl_fill<8>(x, w); break;
    case 16: gl_fill<16>(x, w); break;
    case 32: gl_fill<32>(x, w); break;
    case 64: gl_fill<64>(x, w); break;
    default:
      throw Error(Errc::argument, "unsupported Gauss-Legendre order");
  }
}

Rule segment_rule(cplx a, cplx b, int panels, int order) {
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  Rule r;
  panels = std::max(1, panels);
  r.t.reserve(static_cast<std::size_t>(panels) * gx.size());
  r.w.reserve(r.t.capacity());
  const cplx d = (b - a) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    const cplx lo = a + d * static_cast<double>(p);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      r.t.push_back(lo + d * (0.5 * (gx[i] + 1.0)));
      r.w.push_back(d * (0.5 * gw[i]));
    }
  }
  return r;
}

Rule loop_rule(const Loop& loop, int points) {
  Rule r;
  r.t.reserve(points);
  r.w.reserve(points);
  const double h = 2.0 * pi / points;
  for (int k = 0; k < points; ++k) {
    const cplx z = std::polar(loop.radius, h * k);
    r.t.push_back(loop.center + z);
    r.w.push_back(static_cast<double>(loop.orientation) * I * z * h);
  }
  return r;
}

namespace {

// Semicircle from c - r*d to c + r*d around c, d the unit travel direction.
Rule semicircle_rule(cplx c, double r, cplx d, int side, int panels) {
  std::vector<double> gx, gw;
  gauss_legendre(32, gx, gw);
  Rule out;
  // phi runs pi -> 0 (left detour) or pi -> 2 pi (right detour)
  const double phi0 = pi;
  const double phi1 = side > 0 ? 0.0 : 2.0 * pi;
  const double dphi = (phi1 - phi0) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = phi0 + dphi * p;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double phi = lo + dphi * 0.5 * (gx[i] + 1.0);
      const cplx z = r * d * std::exp(I * phi);
      out.t.push_back(c + z);
      out.w.push_back(I * z * (dphi * 0.5 * gw[i]));
    }
  }
  return out;
}

}  // namespace

void validate_contour(const Contour& c) {
  if (const auto* s = std::get_if<IndentedSegment>(&c)) {
    if (!(s->radius > 0))
      throw Error(Errc::argument, "indentation radius must be positive");
    if (s->sides.size() != s->centers.size())
      throw Error(Errc::argument, "one side per indent center required");
    std::vector<double> pos;
    const cplx d = (s->b - s->a) / std::abs(s->b - s->a);
    for (cplx z : s->centers) pos.push_back(((z - s->a) / d).real());
    std::sort(pos.begin(), pos.end());
    for (std::size_t i = 1; i < pos.size(); ++i)
      if (s->radius >= 0.5 * (pos[i] - pos[i - 1]))
        throw Error(Errc::argument,
                    "indentation radius must be below half the center gap");
  } else if (const auto* e = std::get_if<EtaLine>(&c)) {
    if (e->eta == cplx(0.0))
      throw Error(Errc::argument, "eta_line requires eta != 0");
    if (!(e->radius > 0))
      throw Error(Errc::argument, "eta_line radius must be positive");
  } else if (const auto* l = std::get_if<LineWithLoops>(&c)) {
    for (const auto& lp : l->loops)
      if (!(lp.radius > 0))
        throw Error(Errc::argument, "loop radius must be positive");
  }
}

Rule discretize(const Contour& c, int points, int loop_points) {
  const int panels = std::max(1, (points + 31) / 32);
  return std::visit(
      [&](const auto& k) -> Rule {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Segment>) {
          return segment_rule(k.a, k.b, panels);
        } else if constexpr (std::is_same_v<K, ShiftedSegment>) {
          return segment_rule(k.offset, k.offset + 1.0, panels);
        } else if constexpr (std::is_same_v<K, EtaLine>) {
          return segment_rule(-k.radius * k.eta, k.radius * k.eta, panels);
        } else if constexpr (std::is_same_v<K, LineWithLoops>) {
          Rule r = segment_rule(k.start, k.start + 1.0, panels);
          for (const auto& lp : k.loops) r.append(loop_rule(lp, loop_points));
          return r;
        } else {
          const double len = std::abs(k.b - k.a);
          const cplx d = (k.b - k.a) / len;
          std::vector<std::pair<double, int>> cuts;
          for (std::size_t i = 0; i < k.centers.size(); ++i)
            cuts.emplace_back(((k.centers[i] - k.a) / d).real(), k.sides[i]);
          std::sort(cuts.begin(), cuts.end());
          Rule r;
          double pos = 0.0;
          for (const auto& [s, side] : cuts) {
            const double lo = s - k.radius;
            if (lo > pos) {
              const int np = std::max(1, static_cast<int>(panels * (lo - pos) / len) + 1);
              r.append(segment_rule(k.a + d * pos, k.a + d * lo, np));
            }
            r.append(semicircle_rule(k.a + d * s, k.radius, d, side,
                                     std::max(1, panels / 4)));
            pos = s + k.radius;
          }
          if (pos < len) {
            const int np = std::max(1, static_cast<int>(panels * (len - pos) / len) + 1);
            r.append(segment_rule(k.a + d * pos, k.b, np));
          }
          return r;
        }
      },
      c);
}

EvalResult integrate_contour(const std::function<cplx(cplx)>& f,
                             const Contour& c, const Truncation& tr) {
  tr.validate();
  validate_contour(c);
  auto run = [&](int pts, int lpts) {
    const Rule r = discretize(c, pts, lpts);
    cplx s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const cplx v = f(r.t[i]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(Errc::evaluation,
                    "non-finite integrand at node " + format_complex(r.t[i]));
      s += r.w[i] * v;
    }
    return std::pair{s, static_cast<int>(r.size())};
  };
  auto [coarse, n1] = run(tr.quad_points, 64);
  auto [fine, n2] = run(2 * tr.quad_points, 128);
  EvalResult res;
  res.value = fine;
  res.err_estimate = std::abs(fine - coarse);
  res.terms_used = n1 + n2;
  res.converged =
      res.err_estimate <= std::max(tr.tol_abs, tr.tol_rel * std::abs(fine));
  return res;
}

TanhSinhRule tanh_sinh_rule(int half_points, double h) {
  TanhSinhRule r;
  for (int k = -half_points; k <= half_points; ++k) {
    const double u = k * h;
    const double s = 0.5 * pi * std::sinh(u);
    const double x = 1.0 / (1.0 + std::exp(-2.0 * s));
    const double xc = 1.0 / (1.0 + std::exp(2.0 * s));
    const double ch = std::cosh(s);
    const double w = h * 0.5 * pi * std::cosh(u) / (2.0 * ch * ch);
    if (x <= 0.0 || xc <= 0.0 || !(w > 1e-300)) continue;
    r.x.push_back(x);
    r.xc.push_back(xc);
    r.w.push_back(w);
  }
  return r;
}

}  // namespace et
