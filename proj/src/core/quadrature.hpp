#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "core/types.hpp"

namespace et {

// Discretized path integral: sum w[i] * f(t[i]).
struct Rule {
  std::vector<cplx> t;
  std::vector<cplx> w;
  void append(const Rule& other);
  std::size_t size() const { return t.size(); }
};

struct Segment {
  cplx a, b;
};

// [0,1] + offset
struct ShiftedSegment {
  cplx offset;
};

// Straight path a -> b with semicircular detours around points on it.
// side +1 detours to the left of the direction of travel, -1 to the right.
struct IndentedSegment {
  cplx a, b;
  std::vector<cplx> centers;
  double radius = 0.0;
  std::vector<int> sides;
};

// t = eta * x for x in [-radius, radius]
struct EtaLine {
  cplx eta;
  double radius = 0.0;
};

struct Loop {
  cplx center;
  double radius = 0.0;
  int orientation = 1;  // +1 counterclockwise
};

// Horizontal period start -> start + 1 plus closed loops around poles.
struct LineWithLoops {
  cplx start;
  std::vector<Loop> loops;
};

using Contour =
    std::variant<Segment, ShiftedSegment, IndentedSegment, EtaLine, LineWithLoops>;

void validate_contour(const Contour& c);

// Gauss-Legendre on [-1,1], n in {8, 16, 32, 64}.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Composite Gauss-Legendre along the straight path a -> b.
Rule segment_rule(cplx a, cplx b, int panels, int order = 32);

// Trapezoid rule on a circle.
Rule loop_rule(const Loop& loop, int points);

// Straight pieces use ceil(points/32) panels; loops use loop_points nodes.
Rule discretize(const Contour& c, int points, int loop_points = 64);

// Node-doubling error estimate; throws Errc::evaluation on non-finite f.
EvalResult integrate_contour(const std::function<cplx(cplx)>& f,
                             const Contour& c, const Truncation& tr);

// Tanh-sinh nodes on (0,1); xc = 1 - x is stored separately so endpoint
// singular integrands can be evaluated without cancellation.
struct TanhSinhRule {
  std::vector<double> x, xc, w;
};
TanhSinhRule tanh_sinh_rule(int half_points, double h);

}  // namespace et
