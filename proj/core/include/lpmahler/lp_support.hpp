#pragma once

#include <limits>
#include <vector>

#include "lpmahler/geometry.hpp"

namespace lpm {

namespace detail {

/// Divided differences of exp on 2, 3 or 4 nodes, evaluated on shifted nodes
/// (callers subtract the maximum first so every node is <= 0). Second and
/// third differences switch to a centered Taylor series once the node spread
/// drops below 1e-4; the straightforward recursion loses ~spread^-1 digits
/// there and nothing else does.
double exp_divdiff1(double a, double b);
double exp_divdiff2(double a, double b, double c);
double exp_divdiff3(double a, double b, double c, double d);

}  // namespace detail

struct TriangleCell {
  Triangle triangle;
  double weight;  // |cell| / |K|
};

inline constexpr double kInfiniteP = std::numeric_limits<double>::infinity();

/// Precomputed triangulation of a body enabling fast evaluation of the
/// L^p-support function h_{p,K} and its gradient. Immutable after build.
class LpSupportEval {
 public:
  double p() const { return p_; }
  bool infinite_p() const { return !std::isfinite(p_); }
  const Body& body() const { return body_; }
  const std::vector<TriangleCell>& cells() const { return cells_; }
  double total_area() const { return total_area_; }
  double scale() const { return scale_; }
  bool origin_interior() const { return origin_interior_; }

  /// h_{p,K}(y) = (1/p) log of the average of e^{p<x,y>} over K, evaluated in
  /// log space; for p = inf this is the classical support function.
  double h(Point2 y) const;
  /// Gradient of h at y; requires finite p.
  Point2 grad_h(Point2 y) const;

  friend LpSupportEval build_support(const Body& body, double p);
  friend LpSupportEval build_support(const Body& body, double p, Point2 anchor);

 private:
  LpSupportEval(Body body, double p, Point2 anchor);

  double p_;
  Body body_;
  std::vector<TriangleCell> cells_;
  double total_area_;
  double scale_;
  bool origin_interior_;
};

/// Triangulates K from its barycenter (symmetric bodies from the origin).
LpSupportEval build_support(const Body& body, double p);
/// Same with an explicit fan anchor; cells anchored at a vertex collapse.
LpSupportEval build_support(const Body& body, double p, Point2 anchor);

/// Integral of e^{<x,w>} over the triangle, 2|T| times the second divided
/// difference of exp at <v_i,w>. Total; may overflow to +inf for large w.
double exp_integral_triangle(const Triangle& t, Point2 w);
/// log of the same integral, safe for large exponents.
double log_exp_integral_triangle(const Triangle& t, Point2 w);

double h_p(const LpSupportEval& eval, Point2 y);
Point2 grad_h_p(const LpSupportEval& eval, Point2 y);

}  // namespace lpm
