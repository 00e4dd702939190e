#pragma once

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "lpmahler/errors.hpp"

namespace lpm {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Relative cross-product threshold used to decide whether three points are
/// collinear. Shared by hull pruning, polytope validation and the sliding
/// endpoint elimination so that "vertex eliminated" means one thing.
inline constexpr double kCollinearTol = 1e-12;

/// Invertible affine map x -> A x + shift.
struct AffineMap2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;
  Point2 shift{};

  Point2 linear(Point2 p) const { return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y}; }
  Point2 operator()(Point2 p) const { return linear(p) + shift; }
  double det() const { return a11 * a22 - a12 * a21; }
  AffineMap2 inverse() const;

  static AffineMap2 rotation(double angle);
};

/// Counter-clockwise triangle.
class Triangle {
 public:
  Triangle(Point2 v1, Point2 v2, Point2 v3);

  Point2 v1() const { return v1_; }
  Point2 v2() const { return v2_; }
  Point2 v3() const { return v3_; }
  double area() const { return area_; }
  Point2 centroid() const;

 private:
  Point2 v1_, v2_, v3_;
  double area_;
};

/// Convex polytope given by its extreme points in counter-clockwise order.
/// The constructor validates strict convexity (no three consecutive vertices
/// collinear within kCollinearTol relative to edge length) and positive area.
class Polytope2 {
 public:
  explicit Polytope2(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const { return area_; }
  Point2 barycenter() const { return barycenter_; }
  /// Largest vertex norm; the length scale used by tolerances.
  double scale() const { return scale_; }

 private:
  std::vector<Point2> vertices_;
  double area_;
  Point2 barycenter_;
  double scale_;
};

/// Origin-symmetric polytope stored as one half of its vertex set; the full
/// body is the union with the antipodes, expanded once at construction.
class SymmetricPolytope2 {
 public:
  explicit SymmetricPolytope2(std::vector<Point2> half_vertices);

  const std::vector<Point2>& half_vertices() const { return half_; }
  const Polytope2& expanded() const { return full_; }

 private:
  std::vector<Point2> half_;
  Polytope2 full_;
};

using Body = std::variant<Polytope2, SymmetricPolytope2>;

bool is_symmetric(const Body& b);
const Polytope2& full_polytope(const Body& b);
double area(const Body& b);
Point2 barycenter(const Body& b);
std::size_t vertex_count(const Body& b);
Body translate(const Body& b, Point2 v);
/// Applies an affine map; symmetric bodies stay symmetric only under pure
/// linear maps (zero shift), otherwise the result is a plain polytope.
Body transform(const AffineMap2& map, const Body& b);

/// Removes vertices of a ccw cycle that fail the strict-extremality test.
std::vector<Point2> prune_nonextreme(std::vector<Point2> ccw_cycle);

Polytope2 convex_hull(const std::vector<Point2>& points);
double support_classical(const Polytope2& p, Point2 y);
Polytope2 classical_polar(const Polytope2& p);
double hausdorff_distance(const Polytope2& p, const Polytope2& q);
std::vector<Triangle> triangulate_fan(const Polytope2& p, Point2 anchor);

double distance_to_polytope(const Polytope2& p, Point2 pt);
bool strictly_inside(const Polytope2& p, Point2 pt);
bool inside_or_on(const Polytope2& p, Point2 pt);

/// Result of rotating a body so that vertex k sits above the horizontal chord
/// of its two neighbours. The rotated body is cyclically relabelled so the
/// sliding vertex is at index 1 (its neighbours at 0 and 2); for symmetric
/// bodies indices refer to the half list.
struct SlidingNormalization {
  AffineMap2 rotation;  // pure rotation, det = 1, no shift
  Body body;
  std::size_t apex_index;  // always 1 after relabelling
};

SlidingNormalization normalize_for_sliding(const Body& b, std::size_t k);

}  // namespace lpm
