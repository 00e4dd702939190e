#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpmahler/mahler.hpp"

namespace lpm {

/// One-parameter Mahler-sliding family: the apex vertex moves along the
/// horizontal line y = apex_height above the chord [v3, v1] while the rest of
/// the polytope stays fixed, so the area is constant in x2. The admissible
/// range [xi_left, xi_right] ends where the apex becomes collinear with an
/// adjacent edge and a vertex is eliminated. Symmetric families move the two
/// antipodal apexes simultaneously.
struct SlidingFamily {
  bool symmetric;
  Point2 v1;                 // right chord endpoint
  Point2 v3;                 // left chord endpoint, v3.y == v1.y, v3.x < v1.x
  double apex_height;        // y2 > chord height
  double original_x2;
  double xi_left;
  double xi_right;
  std::vector<Point2> rest;  // vertices after v3 in ccw order (half list for symmetric)
  Polytope2 fixed_part;      // the body minus the moving triangle(s)
  AffineMap2 frame;          // maps input coordinates into the family frame

  double chord_height() const { return v1.y; }
  double triangle_area() const { return 0.5 * (v1.x - v3.x) * (apex_height - v1.y); }
};

SlidingFamily make_family(const Body& body, std::size_t k);

/// Translates a non-symmetric family (and its frame) by v.
SlidingFamily translated(const SlidingFamily& fam, Point2 v);
/// Shifts a non-symmetric family so the barycenter of its fixed part is at
/// the origin; balancing requires the origin interior to the fixed part.
SlidingFamily recentered_on_fixed_part(const SlidingFamily& fam);

/// Reconstitutes the polytope at sliding position x2; at the endpoints the
/// newly collinear vertex is pruned.
Body body_at(const SlidingFamily& fam, double x2);

/// The horizontal translation x0 = x0(x2, x2') that balances the half-plane
/// ratios: ratio(P(x2) - (x0,0)) == ratio(P(x2') - (-x0,0)) where
/// ratio = |polar cap {x>0}| / |polar cap {x<0}|. Among multiple roots the
/// one nearest 0 is returned.
double balancing_translation(const SlidingFamily& fam, double x2, double x2p, double p,
                             const QuadConfig& q);

/// Samples x2 -> 1/|S(x2)^{o,p}| (symmetric) or x2 -> 1/|P(x2)^{*,p}|
/// (Santalo-translated, non-symmetric) on an equispaced grid.
std::vector<std::pair<double, double>> convexity_curve(const SlidingFamily& fam, double p,
                                                       int grid, const QuadConfig& q);

struct ReduceStep {
  std::size_t vertex_index;
  double xi_left;
  double xi_right;
  std::array<double, 2> endpoint_mp;  // left, right
  std::string chosen;                 // "left" or "right"
  std::optional<double> x0_balance;
};

/// Slides one vertex (an antipodal pair for symmetric bodies) to the endpoint
/// with the smaller Mahler volume; all vertices are tried and the best kept.
/// Non-symmetric endpoint values are Santalo-translated.
std::pair<Body, ReduceStep> reduce_once(const Body& body, double p, const QuadConfig& q);

struct ReduceChain {
  std::vector<Body> bodies;    // input first, terminal last
  std::vector<double> m_p;     // matching Mahler volumes (translated when non-symmetric)
  std::vector<ReduceStep> steps;
};

/// Iterates reduce_once down to a triangle (symmetric: quadrilateral).
ReduceChain reduce_chain(const Body& body, double p, const QuadConfig& q);

}  // namespace lpm
