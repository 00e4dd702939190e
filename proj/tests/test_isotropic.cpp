#include <doctest.h>

#include <cmath>

#include "lpmahler/harness.hpp"
#include "lpmahler/isotropic.hpp"
#include "lpmahler/sliding.hpp"

using namespace lpm;

namespace {

Body unit_square() { return SymmetricPolytope2({{1.0, 1.0}, {-1.0, 1.0}}); }

CovMatrix2 union_formula(const CovMatrix2& cl, double al, Point2 bl, const CovMatrix2& cc,
                         double ac, Point2 bc) {
  const double a = al + ac;
  const Point2 d = bl - bc;
  const double w = al * ac / (a * a);
  return {al / a * cl.c11 + ac / a * cc.c11 + w * d.x * d.x,
          al / a * cl.c12 + ac / a * cc.c12 + w * d.x * d.y,
          al / a * cl.c22 + ac / a * cc.c22 + w * d.y * d.y};
}

CovMatrix2 triangle_cov(const Triangle& t) {
  const TriangleMoments m = moments_triangle(t);
  const Point2 b = (1.0 / m.area) * m.first;
  return {m.ixx / m.area - b.x * b.x, m.ixy / m.area - b.x * b.y, m.iyy / m.area - b.y * b.y};
}

}  // namespace

TEST_CASE("moments_triangle") {
  // reference triangle with basis l = h = 1 centred on the x-axis
  const Triangle t({-0.5, 0}, {0.5, 0}, {0.0, 1.0});
  const CovMatrix2 c = triangle_cov(t);
  CHECK(c.c11 == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  CHECK(c.c22 == doctest::Approx(1.0 / 18.0).epsilon(1e-14));
  CHECK(std::abs(c.c12) < 1e-16);

  const Triangle unit({0, 0}, {1, 0}, {0, 1});
  CHECK(moments_triangle(unit).first.x == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const double l = rng.uniform(0.3, 2.5), h = rng.uniform(0.3, 2.5), x2 = rng.uniform(-2, 2);
    const Triangle tr({-l / 2, 0}, {l / 2, 0}, {x2, h});
    const TriangleMoments m = moments_triangle(tr);
    CHECK(m.first.x / m.area == doctest::Approx(x2 / 3).epsilon(1e-13));
    CHECK(m.first.y / m.area == doctest::Approx(h / 3).epsilon(1e-13));
    const CovMatrix2 cv = triangle_cov(tr);
    CHECK(cv.c11 == doctest::Approx((x2 * x2 + 0.75 * l * l) / 18.0).epsilon(1e-11));
    CHECK(cv.c12 == doctest::Approx(x2 * h / 18.0).epsilon(1e-11));
    CHECK(cv.c22 == doctest::Approx(h * h / 18.0).epsilon(1e-11));
  }
}

TEST_CASE("covariance") {
  const CovMatrix2 sq = covariance(unit_square());
  CHECK(sq.c11 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sq.c22 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(sq.c12) < 1e-15);

  SUBCASE("union formula reproduces the direct value") {
    // split the square along a diagonal into two triangles
    const Triangle lower({-1, -1}, {1, -1}, {1, 1});
    const Triangle upper({1, 1}, {-1, 1}, {-1, -1});
    const TriangleMoments ml = moments_triangle(lower);
    const TriangleMoments mu = moments_triangle(upper);
    const CovMatrix2 fused =
        union_formula(triangle_cov(lower), ml.area, (1.0 / ml.area) * ml.first,
                      triangle_cov(upper), mu.area, (1.0 / mu.area) * mu.first);
    CHECK(fused.c11 == doctest::Approx(sq.c11).epsilon(1e-14));
    CHECK(fused.c12 == doctest::Approx(sq.c12).epsilon(1e-14));
    CHECK(fused.c22 == doctest::Approx(sq.c22).epsilon(1e-14));
  }

  SUBCASE("translation invariance and affine equivariance") {
    Rng rng(29);
    for (std::uint64_t s = 0; s < 8; ++s) {
      const Body b = random_body({s, 5, false, Generator::GAUSS_HULL});
      const Point2 v{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      const CovMatrix2 c0 = covariance(b);
      const CovMatrix2 c1 = covariance(translate(b, v));
      CHECK(c1.c11 == doctest::Approx(c0.c11).epsilon(1e-12));
      CHECK(c1.c12 == doctest::Approx(c0.c12).epsilon(1e-12));
      CHECK(c1.c22 == doctest::Approx(c0.c22).epsilon(1e-12));

      AffineMap2 map{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                     rng.uniform(-2, 2), {}};
      if (std::abs(map.det()) < 0.2) continue;
      const CovMatrix2 ct = covariance(transform(map, b));
      // Cov(AK) = A Cov(K) A^T
      const double e11 = map.a11 * (map.a11 * c0.c11 + map.a12 * c0.c12) +
                         map.a12 * (map.a11 * c0.c12 + map.a12 * c0.c22);
      const double e12 = map.a21 * (map.a11 * c0.c11 + map.a12 * c0.c12) +
                         map.a22 * (map.a11 * c0.c12 + map.a12 * c0.c22);
      const double e22 = map.a21 * (map.a21 * c0.c11 + map.a22 * c0.c12) +
                         map.a22 * (map.a21 * c0.c12 + map.a22 * c0.c22);
      CHECK(ct.c11 == doctest::Approx(e11).epsilon(1e-10));
      CHECK(ct.c12 == doctest::Approx(e12).epsilon(1e-10));
      CHECK(ct.c22 == doctest::Approx(e22).epsilon(1e-10));
    }
  }
}

TEST_CASE("cee") {
  CHECK(cee(Body{Polytope2({{1, 0}, {0, 1}, {-1, -1}})}) == doctest::Approx(108.0).epsilon(1e-13));
  CHECK(cee(unit_square()) == doctest::Approx(144.0).epsilon(1e-13));

  SUBCASE("any triangle gives 108") {
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
      Point2 a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      Point2 b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      Point2 c{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      if (cross(b - a, c - a) < 0.1) continue;
      CHECK(cee(Body{Polytope2({a, b, c})}) == doctest::Approx(108.0).epsilon(1e-10));
    }
  }

  SUBCASE("96-gon approaches the disk value 16 pi^2") {
    const double limit = 16.0 * M_PI * M_PI;
    double prev_gap = 1e300;
    for (int k : {12, 24, 48, 96}) {
      std::vector<Point2> v;
      for (int i = 0; i < k; ++i)
        v.push_back({std::cos(2.0 * M_PI * i / k), std::sin(2.0 * M_PI * i / k)});
      const double gap = std::abs(cee(Body{Polytope2(std::move(v))}) - limit);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 0.005 * limit);
  }

  SUBCASE("affine invariance and the two lower bounds") {
    Rng rng(37);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const bool sym = s % 2 == 0;
      const Body b = random_body({s, sym ? 4 : 6, sym, Generator::GAUSS_HULL});
      AffineMap2 map{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                     rng.uniform(-2, 2),
                     {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
      if (std::abs(map.det()) < 0.2) continue;
      CHECK(cee(transform(map, b)) == doctest::Approx(cee(b)).epsilon(1e-9));
      CHECK(cee(b) >= 108.0 - 1e-6);
      if (sym) CHECK(cee(b) >= 144.0 - 1e-6);
      CHECK(cee(b) <= 16.0 * M_PI * M_PI * 1.01);
    }
  }
}

TEST_CASE("isotropic_transform") {
  SUBCASE("triangles land on Cov = 108^{-1/2} I") {
    Rng rng(41);
    for (int i = 0; i < 10; ++i) {
      Point2 a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      Point2 b{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      Point2 c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      if (cross(b - a, c - a) < 0.2) continue;
      const Body tri{Polytope2({a, b, c})};
      const AffineMap2 t = isotropic_transform(tri);
      const Body image = transform(t, tri);
      CHECK(area(image) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(norm(full_polytope(image).barycenter()) < 1e-12);
      const CovMatrix2 cv = covariance(image);
      const double expect = 1.0 / std::sqrt(108.0);
      CHECK(cv.c11 == doctest::Approx(expect).epsilon(1e-10));
      CHECK(cv.c22 == doctest::Approx(expect).epsilon(1e-10));
      CHECK(std::abs(cv.c12) < 1e-10);
      CHECK(std::abs(t.det()) == doctest::Approx(1.0 / area(tri)).epsilon(1e-12));
    }
  }

  SUBCASE("already isotropic bodies map by the identity") {
    // the square scaled to unit volume is isotropic
    const double s = 0.5;
    const Body small{SymmetricPolytope2({{s, s}, {-s, s}})};
    const AffineMap2 t = isotropic_transform(small);
    CHECK(t.a11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.a22 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(t.a12) < 1e-13);
    CHECK(norm(t.shift) < 1e-13);
  }
}

TEST_CASE("iso_sliding_quadratic") {
  Rng rng(43);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const bool sym = s % 2 == 0;
    const Body b = random_body({s, sym ? 3 : 5, sym, Generator::CIRCLE_HULL});
    const SlidingFamily fam = make_family(b, rng.index(3));
    const IsoQuadratic quad = iso_sliding_quadratic(fam);
    CHECK(quad.a >= -1e-12);
    // interpolation reproduces the value at the original position
    const Body orig = body_at(fam, fam.original_x2);
    const double expect = area(orig) * area(orig) * covariance(orig).det();
    CHECK(quad.eval(fam.original_x2) == doctest::Approx(expect).epsilon(1e-11));
  }
}
