#pragma once

#include "lpmahler/geometry.hpp"

namespace lpm {

struct SlidingFamily;

/// Symmetric positive-definite 2x2 covariance matrix.
struct CovMatrix2 {
  double c11, c12, c22;

  double det() const { return c11 * c22 - c12 * c12; }
  double trace() const { return c11 + c22; }
};

/// Raw (uncentered) integrals over a triangle, exact for polynomials of
/// degree 2 via the edge-midpoint rule.
struct TriangleMoments {
  double area;
  Point2 first;  // integrals of x and y
  double ixx, ixy, iyy;
};

TriangleMoments moments_triangle(const Triangle& t);

/// Exact polygon covariance, assembled from raw moments over a barycenter fan
/// with a single final centering.
CovMatrix2 covariance(const Body& body);

/// The affine invariant C(K) = |K|^2 / det Cov(K).
double cee(const Body& body);

/// The unique T (symmetric positive-definite linear part) with |TK| = 1,
/// b(TK) = 0 and Cov(TK) a multiple of the identity.
AffineMap2 isotropic_transform(const Body& body);

/// Coefficients of x2^2, x2, 1.
struct IsoQuadratic {
  double a, b, c;
  double eval(double x) const { return (a * x + b) * x + c; }
};

/// |P|^4 / C(P(x2)) as an exact quadratic in the sliding parameter,
/// interpolated at three nodes and verified at eight held-out nodes.
IsoQuadratic iso_sliding_quadratic(const SlidingFamily& fam);

}  // namespace lpm
