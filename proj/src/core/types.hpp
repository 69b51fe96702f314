#pragma once

#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace et {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// e(z) = exp(2 pi i z)
inline cplx e2pi(cplx z) { return std::exp(2.0 * pi * I * z); }

enum class Errc {
  domain = 1,   // parameter outside the regime of the formula
  pole,         // evaluation at (or too near) a pole
  divergence,   // series or line integral does not decay
  pinch,        // pole families pinch the contour
  contour,      // pole too close to the integration path
  argument,     // malformed or out-of-range input
  consistency,  // exact computation produced an impossible remainder
  evaluation    // non-finite value at a node
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

struct Truncation {
  int product_cutoff = 40;
  int series_cutoff = 60;
  int quad_points = 128;
  double line_radius = 0.0;  // 0: caller derives it from the decay envelope
  double tol_abs = 1e-14;
  double tol_rel = 1e-12;
  double pinch_tol = 1e-6;

  void validate() const;
  Truncation scaled(double factor) const;

  // Defaults multiplied by ELLIPTHETA_TRUNC_SCALE when set.
  static Truncation defaults();
};

struct EvalResult {
  cplx value{0.0, 0.0};
  double err_estimate = 0.0;
  int terms_used = 0;
  double min_pole_distance = std::numeric_limits<double>::infinity();
  bool converged = true;
};

std::string format_complex(cplx z, int digits = 17);

}  // namespace et
