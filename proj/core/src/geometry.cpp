#include "lpmahler/geometry.hpp"

#include <algorithm>
#include <limits>

namespace lpm {

namespace {

double signed_area2(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// Collinearity test relative to the local edge lengths.
bool collinear(Point2 a, Point2 b, Point2 c) {
  const double s = norm(b - a) * norm(c - b);
  return std::abs(signed_area2(a, b, c)) <= kCollinearTol * std::max(s, 1e-300);
}

}  // namespace

std::vector<Point2> prune_nonextreme(std::vector<Point2> v) {
  bool changed = true;
  while (changed && v.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 a = v[(i + v.size() - 1) % v.size()];
      const Point2 b = v[i];
      const Point2 c = v[(i + 1) % v.size()];
      if (collinear(a, b, c)) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

AffineMap2 AffineMap2::inverse() const {
  const double d = det();
  if (std::abs(d) < 1e-300) throw DegenerateInput("AffineMap2::inverse: singular linear part");
  AffineMap2 inv;
  inv.a11 = a22 / d;
  inv.a12 = -a12 / d;
  inv.a21 = -a21 / d;
  inv.a22 = a11 / d;
  const Point2 s = inv.linear(shift);
  inv.shift = {-s.x, -s.y};
  return inv;
}

AffineMap2 AffineMap2::rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c, {0.0, 0.0}};
}

Triangle::Triangle(Point2 v1, Point2 v2, Point2 v3) : v1_(v1), v2_(v2), v3_(v3) {
  const double a2 = signed_area2(v1, v2, v3);
  if (!(a2 > 0.0)) throw DegenerateInput("Triangle: vertices must be counter-clockwise with positive area");
  area_ = 0.5 * a2;
}

Point2 Triangle::centroid() const { return (1.0 / 3.0) * (v1_ + v2_ + v3_); }

Polytope2::Polytope2(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw DegenerateInput("Polytope2: need at least 3 vertices");
  for (const Point2& v : vertices_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw DegenerateInput("Polytope2: non-finite coordinate");
  }
  double a2 = 0.0;
  Point2 c{0.0, 0.0};
  scale_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = vertices_[i];
    const Point2 q = vertices_[(i + 1) % n];
    const double w = cross(p, q);
    a2 += w;
    c = c + w * (p + q);
    scale_ = std::max(scale_, norm(p));
  }
  if (!(a2 > 0.0)) throw DegenerateInput("Polytope2: vertices must be counter-clockwise with positive area");
  area_ = 0.5 * a2;
  barycenter_ = (1.0 / (3.0 * a2)) * c;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    const Point2 d = vertices_[(i + 2) % n];
    if (signed_area2(a, b, d) <= 0.0 || collinear(a, b, d))
      throw DegenerateInput("Polytope2: vertex " + std::to_string((i + 1) % n) + " is not strictly extreme");
  }
}

SymmetricPolytope2::SymmetricPolytope2(std::vector<Point2> half_vertices)
    : half_(std::move(half_vertices)), full_([&] {
        std::vector<Point2> v = half_;
        for (const Point2& p : half_) v.push_back(-p);
        return Polytope2(std::move(v));
      }()) {
  for (std::size_t i = 0; i < half_.size(); ++i)
    for (std::size_t j = i + 1; j < half_.size(); ++j) {
      if (norm(half_[i] + half_[j]) <= kCollinearTol * std::max(1.0, norm(half_[i])))
        throw DegenerateInput("SymmetricPolytope2: half list contains an antipodal pair");
    }
}

bool is_symmetric(const Body& b) { return std::holds_alternative<SymmetricPolytope2>(b); }

const Polytope2& full_polytope(const Body& b) {
  if (const auto* s = std::get_if<SymmetricPolytope2>(&b)) return s->expanded();
  return std::get<Polytope2>(b);
}

double area(const Body& b) { return full_polytope(b).area(); }

Point2 barycenter(const Body& b) {
  if (is_symmetric(b)) return {0.0, 0.0};
  return full_polytope(b).barycenter();
}

std::size_t vertex_count(const Body& b) { return full_polytope(b).size(); }

Body translate(const Body& b, Point2 v) {
  if (const auto* s = std::get_if<SymmetricPolytope2>(&b)) {
    if (v.x == 0.0 && v.y == 0.0) return *s;
    std::vector<Point2> verts = s->expanded().vertices();
    for (Point2& p : verts) p = p + v;
    return Polytope2(std::move(verts));
  }
  std::vector<Point2> verts = std::get<Polytope2>(b).vertices();
  for (Point2& p : verts) p = p + v;
  return Polytope2(std::move(verts));
}

Body transform(const AffineMap2& map, const Body& b) {
  if (std::abs(map.det()) < 1e-300) throw DegenerateInput("transform: singular linear part");
  const bool keep_symmetry =
      is_symmetric(b) && map.shift.x == 0.0 && map.shift.y == 0.0;
  const bool flips = map.det() < 0.0;
  if (keep_symmetry) {
    std::vector<Point2> half = std::get<SymmetricPolytope2>(b).half_vertices();
    for (Point2& p : half) p = map(p);
    if (flips) std::reverse(half.begin(), half.end());
    return SymmetricPolytope2(std::move(half));
  }
  std::vector<Point2> verts = full_polytope(b).vertices();
  for (Point2& p : verts) p = map(p);
  if (flips) std::reverse(verts.begin(), verts.end());
  return Polytope2(std::move(verts));
}

Polytope2 convex_hull(const std::vector<Point2>& points) {
  if (points.size() < 3) throw DegenerateInput("convex_hull: need at least 3 points");
  std::vector<Point2> pts = points;
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");

  // Andrew's monotone chain, strict turns only.
  auto build = [&](bool lower) {
    std::vector<Point2> chain;
    auto scan = [&](const Point2& p) {
      while (chain.size() >= 2 &&
             (signed_area2(chain[chain.size() - 2], chain.back(), p) <= 0.0 ||
              collinear(chain[chain.size() - 2], chain.back(), p)))
        chain.pop_back();
      chain.push_back(p);
    };
    if (lower)
      for (const Point2& p : pts) scan(p);
    else
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) scan(*it);
    return chain;
  };
  std::vector<Point2> hull = build(true);
  std::vector<Point2> upper = build(false);
  hull.pop_back();
  upper.pop_back();
  hull.insert(hull.end(), upper.begin(), upper.end());
  hull = prune_nonextreme(std::move(hull));
  if (hull.size() < 3) throw DegenerateInput("convex_hull: hull has fewer than 3 extreme points");
  return Polytope2(std::move(hull));
}

double support_classical(const Polytope2& p, Point2 y) {
  double h = -std::numeric_limits<double>::infinity();
  for (const Point2& v : p.vertices()) h = std::max(h, dot(v, y));
  return h;
}

Polytope2 classical_polar(const Polytope2& p) {
  // Reject origins within ~1e-14 of the boundary as well: the half-plane
  // intersection below inverts a system that becomes singular there.
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    if (cross(b - a, -1.0 * a) <= 1e-14 * norm(b - a) * p.scale())
      throw OriginNotInterior("classical_polar: origin must be strictly interior");
  }
  std::vector<Point2> polar;
  polar.reserve(n);
  // One polar vertex per edge: solve <v_i,y> = 1, <v_{i+1},y> = 1.
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    const double d = cross(a, b);
    polar.push_back({(b.y - a.y) / d, (a.x - b.x) / d});
  }
  return Polytope2(std::move(polar));
}

double distance_to_polytope(const Polytope2& p, Point2 pt) {
  if (inside_or_on(p, pt)) return 0.0;
  const auto& v = p.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    const Point2 ab = b - a;
    const double t = std::clamp(dot(pt - a, ab) / dot(ab, ab), 0.0, 1.0);
    best = std::min(best, norm(pt - (a + t * ab)));
  }
  return best;
}

bool strictly_inside(const Polytope2& p, Point2 pt) {
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    if (cross(b - a, pt - a) <= 0.0) return false;
  }
  return true;
}

bool inside_or_on(const Polytope2& p, Point2 pt) {
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    const double c = cross(b - a, pt - a);
    if (c < -kCollinearTol * std::max(norm(b - a) * (norm(pt - a) + norm(b - a)), 1e-300))
      return false;
  }
  return true;
}

double hausdorff_distance(const Polytope2& p, const Polytope2& q) {
  double d = 0.0;
  for (const Point2& v : p.vertices()) d = std::max(d, distance_to_polytope(q, v));
  for (const Point2& v : q.vertices()) d = std::max(d, distance_to_polytope(p, v));
  return d;
}

std::vector<Triangle> triangulate_fan(const Polytope2& p, Point2 anchor) {
  if (!inside_or_on(p, anchor)) throw AnchorOutside("triangulate_fan: anchor outside the polytope");
  const auto& v = p.vertices();
  std::vector<Triangle> fan;
  fan.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    if (collinear(anchor, a, b) || signed_area2(anchor, a, b) <= 0.0) continue;  // degenerate fan triangle
    fan.emplace_back(anchor, a, b);
  }
  return fan;
}

SlidingNormalization normalize_for_sliding(const Body& b, std::size_t k) {
  const bool sym = is_symmetric(b);
  if (sym) {
    const auto& half = std::get<SymmetricPolytope2>(b).half_vertices();
    if (half.size() < 3) throw DegenerateInput("normalize_for_sliding: symmetric body needs >= 6 vertices");
    if (k >= half.size()) throw OutOfRange("normalize_for_sliding: vertex index out of range");
  } else {
    if (vertex_count(b) < 4) throw DegenerateInput("normalize_for_sliding: body needs >= 4 vertices");
    if (k >= vertex_count(b)) throw OutOfRange("normalize_for_sliding: vertex index out of range");
  }

  const auto& full = full_polytope(b).vertices();
  const std::size_t n = full.size();
  const Point2 apex = full[k];
  const Point2 prev = full[(k + n - 1) % n];
  const Point2 next = full[(k + 1) % n];
  const Point2 d = prev - next;
  if (norm(d) <= kCollinearTol * std::max(1.0, norm(prev)))
    throw DegenerateNeighbors("normalize_for_sliding: neighbours coincide");

  // Rotate the chord (next -> prev) onto the +x axis; ccw orientation then
  // places the apex strictly above it.
  const AffineMap2 rot = AffineMap2::rotation(-std::atan2(d.y, d.x));
  if (rot.linear(apex - next).y <= 0.0)
    throw DegenerateInput("normalize_for_sliding: apex not strictly above the neighbour chord");

  if (sym) {
    const auto& half = std::get<SymmetricPolytope2>(b).half_vertices();
    const std::size_t m = half.size();
    std::vector<Point2> relabeled(m);
    for (std::size_t j = 0; j < m; ++j) relabeled[j] = rot(full[(k + n - 1 + j) % n]);
    return {rot, SymmetricPolytope2(std::move(relabeled)), 1};
  }
  std::vector<Point2> relabeled(n);
  for (std::size_t j = 0; j < n; ++j) relabeled[j] = rot(full[(k + n - 1 + j) % n]);
  return {rot, Polytope2(std::move(relabeled)), 1};
}

}  // namespace lpm
