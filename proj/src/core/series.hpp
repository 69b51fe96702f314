#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <utility>

#include "core/types.hpp"

namespace et {

// Sum of term(m) over |m| <= trunc.series_cutoff, stopping early once the
// boundary pair has been negligible for two consecutive steps.
template <class Term>
EvalResult sum_Z_series(Term&& term, const Truncation& tr) {
  tr.validate();
  EvalResult r;
  cplx s = term(0);
  double prev = std::abs(s);
  double bnd = prev;
  int quiet = 0;
  int n = 0;
  for (int m = 1; m <= tr.series_cutoff; ++m) {
    const cplx a = term(m);
    const cplx b = term(-m);
    s += a + b;
    n = m;
    bnd = std::abs(a) + std::abs(b);
    const double thresh = 1e-2 * std::max(tr.tol_abs, tr.tol_rel * std::abs(s));
    if (bnd < thresh && bnd <= prev) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    prev = bnd;
  }
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw Error(Errc::evaluation, "non-finite series sum");
  r.value = s;
  r.err_estimate = bnd;
  r.terms_used = 2 * n + 1;
  r.converged = bnd < std::max(tr.tol_abs, tr.tol_rel * std::abs(s));
  if (!r.converged && n == tr.series_cutoff) {
    const double inner = std::abs(term(n - 1)) + std::abs(term(-(n - 1)));
    if (bnd > inner && n > 1)
      throw Error(Errc::divergence,
                  "series boundary terms grow at cutoff " + std::to_string(n));
  }
  return r;
}

// Product of factor(j,k) over 0 <= j < jmax, 0 <= k < kmax; the error
// estimate sums |factor-1| over the outer boundary layer.  A factor may be
// given as a (numerator, denominator) pair, in which case a denominator
// within pinch_tol of zero raises a pole error.
template <class Factor>
EvalResult product_grid(Factor&& factor, int jmax, int kmax,
                        double pinch_tol = 0.0) {
  EvalResult r;
  cplx p = 1.0;
  double layer = 0.0;
  for (int j = 0; j < jmax; ++j)
    for (int k = 0; k < kmax; ++k) {
      cplx f;
      if constexpr (std::is_same_v<std::decay_t<decltype(factor(j, k))>,
                                   std::pair<cplx, cplx>>) {
        const auto [num, den] = factor(j, k);
        r.min_pole_distance = std::min(r.min_pole_distance, std::abs(den));
        if (std::abs(den) < pinch_tol)
          throw Error(Errc::pole, "product denominator vanishes at (j,k)=(" +
                                      std::to_string(j) + "," +
                                      std::to_string(k) + ")");
        f = num / den;
      } else {
        f = factor(j, k);
      }
      p *= f;
      if (j == jmax - 1 || k == kmax - 1) layer += std::abs(f - 1.0);
    }
  r.value = p;
  r.err_estimate = layer * std::abs(p);
  r.terms_used = jmax * kmax;
  return r;
}

template <class Factor>
EvalResult product_grid(Factor&& factor, const Truncation& tr) {
  tr.validate();
  return product_grid(factor, tr.product_cutoff + 1, tr.product_cutoff + 1,
                      tr.pinch_tol);
}

}  // namespace et
