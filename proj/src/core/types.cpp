#include "core/types.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace et {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::domain: return "domain";
    case Errc::pole: return "pole";
    case Errc::divergence: return "divergence";
    case Errc::pinch: return "pinch";
    case Errc::contour: return "contour";
    case Errc::argument: return "argument";
    case Errc::consistency: return "consistency";
    case Errc::evaluation: return "evaluation";
  }
  return "unknown";
}

void Truncation::validate() const {
  if (product_cutoff < 1 || series_cutoff < 1 || quad_points < 1)
    throw Error(Errc::argument, "truncation cutoffs must be >= 1");
  if (!(tol_abs > 0) || !(tol_rel > 0) || !(pinch_tol > 0))
    throw Error(Errc::argument, "truncation tolerances must be > 0");
  if (line_radius < 0)
    throw Error(Errc::argument, "line_radius must be >= 0");
}

Truncation Truncation::scaled(double factor) const {
  Truncation t = *this;
  auto sc = [factor](int v) {
    return std::max(1, static_cast<int>(std::lround(v * factor)));
  };
  t.product_cutoff = sc(product_cutoff);
  t.series_cutoff = sc(series_cutoff);
  t.quad_points = sc(quad_points);
  if (line_radius > 0) t.line_radius = line_radius * factor;
  return t;
}

Truncation Truncation::defaults() {
  Truncation t;
  if (const char* s = std::getenv("ELLIPTHETA_TRUNC_SCALE")) {
    char* end = nullptr;
    double f = std::strtod(s, &end);
    if (end == s || !(f > 0) || !std::isfinite(f))
      throw Error(Errc::argument,
                  std::string("bad ELLIPTHETA_TRUNC_SCALE: ") + s);
    t = t.scaled(f);
  }
  return t;
}

std::string format_complex(cplx z, int digits) {
  char buf[96];
  double im = z.imag();
  // keep "-0" out of reports so reruns compare byte-identical
  double re = z.real() == 0.0 ? 0.0 : z.real();
  if (im == 0.0) im = 0.0;
  std::snprintf(buf, sizeof buf, "%.*g%c%.*gi", digits, re,
                std::signbit(im) ? '-' : '+', digits, std::fabs(im));
  return buf;
}

}  // namespace et
