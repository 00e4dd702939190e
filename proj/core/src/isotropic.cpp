#include "lpmahler/isotropic.hpp"

#include <cmath>

#include "lpmahler/sliding.hpp"

namespace lpm {

TriangleMoments moments_triangle(const Triangle& t) {
  const Point2 m12 = 0.5 * (t.v1() + t.v2());
  const Point2 m23 = 0.5 * (t.v2() + t.v3());
  const Point2 m31 = 0.5 * (t.v3() + t.v1());
  const double w = t.area() / 3.0;
  TriangleMoments m;
  m.area = t.area();
  m.first = w * (m12 + m23 + m31);
  m.ixx = w * (m12.x * m12.x + m23.x * m23.x + m31.x * m31.x);
  m.ixy = w * (m12.x * m12.y + m23.x * m23.y + m31.x * m31.y);
  m.iyy = w * (m12.y * m12.y + m23.y * m23.y + m31.y * m31.y);
  return m;
}

CovMatrix2 covariance(const Body& body) {
  const Polytope2& full = full_polytope(body);
  double a = 0.0, fx = 0.0, fy = 0.0, ixx = 0.0, ixy = 0.0, iyy = 0.0;
  for (const Triangle& t : triangulate_fan(full, full.barycenter())) {
    const TriangleMoments m = moments_triangle(t);
    a += m.area;
    fx += m.first.x;
    fy += m.first.y;
    ixx += m.ixx;
    ixy += m.ixy;
    iyy += m.iyy;
  }
  const double bx = fx / a, by = fy / a;
  return {ixx / a - bx * bx, ixy / a - bx * by, iyy / a - by * by};
}

double cee(const Body& body) {
  const double a = area(body);
  return a * a / covariance(body).det();
}

AffineMap2 isotropic_transform(const Body& body) {
  const CovMatrix2 cov = covariance(body);
  const double d = cov.det();
  const double s = std::sqrt(d);
  const double t = std::sqrt(cov.trace() + 2.0 * s);
  // SPD square root: sqrt(M) = (M + sqrt(det) I) / sqrt(tr + 2 sqrt(det)).
  const double r11 = (cov.c11 + s) / t;
  const double r12 = cov.c12 / t;
  const double r22 = (cov.c22 + s) / t;
  const double rdet = r11 * r22 - r12 * r12;
  // A = scale * sqrt(M)^{-1}; scale chosen so |AK| = 1.
  const double scale = std::pow(d, 0.25) / std::sqrt(area(body));
  AffineMap2 map;
  map.a11 = scale * r22 / rdet;
  map.a12 = -scale * r12 / rdet;
  map.a21 = -scale * r12 / rdet;
  map.a22 = scale * r11 / rdet;
  const Point2 b = barycenter(body);
  map.shift = -1.0 * map.linear(b);
  return map;
}

IsoQuadratic iso_sliding_quadratic(const SlidingFamily& fam) {
  auto value = [&](double x2) {
    const Body b = body_at(fam, x2);
    const double a = area(b);
    return a * a * covariance(b).det();  // == |P|^4 / C(P(x2))
  };
  const double x0 = fam.xi_left;
  const double x2 = fam.xi_right;
  const double x1 = 0.5 * (x0 + x2);
  const double y0 = value(x0), y1 = value(x1), y2 = value(x2);

  const double a = y0 / ((x0 - x1) * (x0 - x2)) + y1 / ((x1 - x0) * (x1 - x2)) +
                   y2 / ((x2 - x0) * (x2 - x1));
  const double b = -(y0 * (x1 + x2) / ((x0 - x1) * (x0 - x2)) +
                     y1 * (x0 + x2) / ((x1 - x0) * (x1 - x2)) +
                     y2 * (x0 + x1) / ((x2 - x0) * (x2 - x1)));
  const double c = y0 * x1 * x2 / ((x0 - x1) * (x0 - x2)) +
                   y1 * x0 * x2 / ((x1 - x0) * (x1 - x2)) +
                   y2 * x0 * x1 / ((x2 - x0) * (x2 - x1));
  const IsoQuadratic quadratic{a, b, c};

  const double scale = std::max({std::abs(y0), std::abs(y1), std::abs(y2)});
  for (int j = 1; j <= 8; ++j) {
    const double x = x0 + (x2 - x0) * j / 9.0;
    if (std::abs(quadratic.eval(x) - value(x)) > 1e-9 * scale)
      throw NotQuadratic("iso_sliding_quadratic: residual check failed at x2 = " +
                         std::to_string(x));
  }
  if (a < -1e-12)
    throw NotQuadratic("iso_sliding_quadratic: negative leading coefficient " + std::to_string(a));
  return quadratic;
}

}  // namespace lpm
