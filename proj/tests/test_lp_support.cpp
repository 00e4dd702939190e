#include <doctest.h>

#include <cmath>

#include "lpmahler/harness.hpp"
#include "lpmahler/lp_support.hpp"
#include "lpmahler/quadrature.hpp"

using namespace lpm;

namespace {

Body unit_square() {
  return SymmetricPolytope2({{1.0, 1.0}, {-1.0, 1.0}});
}

// Independent oracle: integrate e^{<x,w>} over the triangle by horizontal
// slices. One side of every slice lies on the long edge (v0, v2), the other
// on (v0, v1) below the middle vertex and on (v1, v2) above it. The inner
// integral is (e^{wx uR} - e^{wx uL}) / wx; valid for wx away from 0.
double slice_integral(const Triangle& t, Point2 w) {
  Point2 v[3] = {t.v1(), t.v2(), t.v3()};
  std::sort(v, v + 3, [](Point2 a, Point2 b) { return a.y < b.y; });
  auto x_on = [](Point2 a, Point2 b, double y) {
    return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
  };
  auto strip = [&](Point2 side_a, Point2 side_b) {
    if (side_b.y - side_a.y < 1e-12) return 0.0;
    auto f = [&](double y) {
      const double xa = x_on(side_a, side_b, y);
      const double xb = x_on(v[0], v[2], y);
      const double lo = std::min(xa, xb), hi = std::max(xa, xb);
      return std::exp(w.y * y) * (std::exp(w.x * hi) - std::exp(w.x * lo)) / w.x;
    };
    return quad::gk15_adaptive_1(f, side_a.y, side_b.y, 1e-12, 1e-15, 40, 4);
  };
  return strip(v[0], v[1]) + strip(v[1], v[2]);
}

}  // namespace

TEST_CASE("divided differences of exp") {
  using detail::exp_divdiff1;
  using detail::exp_divdiff2;
  using detail::exp_divdiff3;

  CHECK(exp_divdiff1(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(exp_divdiff2(0.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(exp_divdiff3(0.0, 0.0, 0.0, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  // symmetry under permutation
  CHECK(exp_divdiff2(-0.3, -1.2, 0.0) == doctest::Approx(exp_divdiff2(0.0, -0.3, -1.2)).epsilon(1e-15));

  // well-separated nodes against the textbook recursion in long double
  auto direct2 = [](long double a, long double b, long double c) {
    const long double d1 = (std::exp(a) - std::exp(b)) / (a - b);
    const long double d2 = (std::exp(b) - std::exp(c)) / (b - c);
    return static_cast<double>((d1 - d2) / (a - c));
  };
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(-3, 0), b = rng.uniform(-3, 0), c = rng.uniform(-3, 0);
    if (std::abs(a - b) < 1e-3 || std::abs(b - c) < 1e-3 || std::abs(a - c) < 1e-3) continue;
    CHECK(exp_divdiff2(a, b, c) == doctest::Approx(direct2(a, b, c)).epsilon(1e-12));
  }

  // both branches around the series switch at spread 1e-4 agree with the
  // long-double recursion (accurate to ~1e-11 at these spreads)
  auto direct2l = [](long double a, long double b, long double c) {
    const long double d1 = (std::exp(a) - std::exp(b)) / (a - b);
    const long double d2 = (std::exp(b) - std::exp(c)) / (b - c);
    return static_cast<double>((d1 - d2) / (a - c));
  };
  for (int i = 0; i < 50; ++i) {
    const double base = rng.uniform(-1, 0);
    for (const double spread : {0.93e-4, 1.07e-4}) {
      const double mid = base + rng.uniform(0.2, 0.8) * spread;
      CHECK(exp_divdiff2(base, mid, base + spread) ==
            doctest::Approx(direct2l(base, mid, base + spread)).epsilon(3e-10));
    }
  }

  // third difference against its defining recursion on separated nodes
  for (int i = 0; i < 100; ++i) {
    double n[4];
    for (double& x : n) x = rng.uniform(-4, 0);
    std::sort(n, n + 4);
    if (n[3] - n[0] < 1e-2 || n[1] - n[0] < 1e-3 || n[3] - n[2] < 1e-3) continue;
    const double lhs = exp_divdiff3(n[0], n[1], n[2], n[3]);
    const double rhs = (exp_divdiff2(n[1], n[2], n[3]) - exp_divdiff2(n[0], n[1], n[2])) / (n[3] - n[0]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("exp_integral_triangle") {
  const Triangle t({0, 0}, {1, 0}, {0, 1});
  CHECK(exp_integral_triangle(t, {0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(exp_integral_triangle(t, {1, 0}) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-14));

  const double c = 1.7;
  const Triangle shifted({c, 0}, {1 + c, 0}, {c, 1});
  CHECK(exp_integral_triangle(shifted, {1, 0}) ==
        doctest::Approx(std::exp(c) * (std::exp(1.0) - 2.0)).epsilon(1e-13));

  SUBCASE("matches the slice-integral oracle on random triangles") {
    Rng rng(11);
    int done = 0;
    while (done < 100) {
      Point2 a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      Point2 b{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      Point2 cc{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      if (cross(b - a, cc - a) < 0.05) continue;
      const Triangle tri(a, b, cc);
      Point2 w{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      if (std::abs(w.x) < 0.1) continue;
      const double closed = exp_integral_triangle(tri, w);
      const double oracle = slice_integral(tri, w);
      CHECK(closed == doctest::Approx(oracle).epsilon(1e-9));
      ++done;
    }
  }
}

TEST_CASE("build_support") {
  const LpSupportEval sq = build_support(unit_square(), 1.0);
  CHECK(sq.cells().size() == 4);
  for (const TriangleCell& c : sq.cells()) CHECK(c.weight == doctest::Approx(0.25).epsilon(1e-14));

  const Polytope2 tri({{0, 0}, {1, 0}, {0, 1}});
  const LpSupportEval anchored = build_support(Body{tri}, 2.0, Point2{0, 0});
  CHECK(anchored.cells().size() == 1);

  const LpSupportEval hex = build_support(SymmetricPolytope2({{1, 1}, {0, 2}, {-1, 1}}), 3.0);
  CHECK(hex.cells().size() == 6);
  double wsum = 0.0;
  for (const TriangleCell& c : hex.cells()) wsum += c.weight;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(build_support(unit_square(), 0.0), InvalidP);
  CHECK_THROWS_AS(build_support(unit_square(), -2.0), InvalidP);
}

TEST_CASE("h_p values and identities") {
  const LpSupportEval sq1 = build_support(unit_square(), 1.0);
  CHECK(h_p(sq1, {0, 0}) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h_p(sq1, {1, 0}) == doctest::Approx(std::log(std::sinh(1.0))).epsilon(1e-13));

  const LpSupportEval sq_inf = build_support(unit_square(), kInfiniteP);
  CHECK(h_p(sq_inf, {1, 1}) == doctest::Approx(2.0));

  SUBCASE("translation identity") {
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
      const Body b = random_body({static_cast<std::uint64_t>(i), 6, false, Generator::GAUSS_HULL});
      const Point2 x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const Point2 y{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const double p = rng.uniform(0.5, 4.0);
      const LpSupportEval e0 = build_support(b, p);
      const LpSupportEval e1 = build_support(translate(b, -1.0 * x), p);
      CHECK(h_p(e1, y) == doctest::Approx(h_p(e0, y) - dot(x, y)).epsilon(1e-11));
    }
  }

  SUBCASE("convexity in y") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
      const Body b = random_body({static_cast<std::uint64_t>(i % 6), 5, i % 2 == 0, Generator::CIRCLE_HULL});
      const LpSupportEval ev = build_support(b, rng.uniform(0.5, 6.0));
      const Point2 y{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      const Point2 yp{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      const double lam = rng.uniform(0.05, 0.95);
      const Point2 mid = (1 - lam) * y + lam * yp;
      CHECK(ev.h(mid) <= (1 - lam) * ev.h(y) + lam * ev.h(yp) + 1e-10);
    }
  }

  SUBCASE("monotone in p and the p -> inf limit") {
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
      const Body b = random_body({static_cast<std::uint64_t>(i), 6, false, Generator::CIRCLE_HULL});
      const Point2 y{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const double p = rng.uniform(0.5, 3.0), qq = p + rng.uniform(0.5, 3.0);
      CHECK(h_p(build_support(b, p), y) <= h_p(build_support(b, qq), y) + 1e-10);
      const double hinf = h_p(build_support(b, kInfiniteP), y);
      const double h8 = h_p(build_support(b, 8.0), y);
      const double h64 = h_p(build_support(b, 64.0), y);
      CHECK(std::abs(h64 - hinf) < std::abs(h8 - hinf));
    }
  }

  SUBCASE("anchor-independent decomposition") {
    for (std::uint64_t s = 0; s < 8; ++s) {
      const Body b = random_body({s, 6, false, Generator::GAUSS_HULL});
      const Polytope2& poly = full_polytope(b);
      const double p = 1.5;
      const LpSupportEval at_bary = build_support(b, p);
      const LpSupportEval at_vertex = build_support(b, p, poly.vertices()[0]);
      Rng rng(s);
      for (int i = 0; i < 5; ++i) {
        const Point2 y{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        CHECK(h_p(at_bary, y) == doctest::Approx(h_p(at_vertex, y)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("grad_h_p") {
  const LpSupportEval sq = build_support(unit_square(), 2.0);
  CHECK(norm(grad_h_p(sq, {0, 0})) < 1e-14);

  const Polytope2 tri({{0, 0}, {1, 0}, {0, 1}});
  const LpSupportEval et = build_support(Body{tri}, 1.0);
  const Point2 g0 = grad_h_p(et, {0, 0});
  CHECK(g0.x == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(g0.y == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  SUBCASE("finite differences") {
    Rng rng(13);
    for (int i = 0; i < 12; ++i) {
      const Body b = random_body({static_cast<std::uint64_t>(i), 5, false, Generator::GAUSS_HULL});
      const LpSupportEval ev = build_support(b, rng.uniform(0.5, 4.0));
      const Point2 y{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const double step = 1e-5;
      const Point2 g = grad_h_p(ev, y);
      const double fx = (ev.h({y.x + step, y.y}) - ev.h({y.x - step, y.y})) / (2 * step);
      const double fy = (ev.h({y.x, y.y + step}) - ev.h({y.x, y.y - step})) / (2 * step);
      CHECK(g.x == doctest::Approx(fx).epsilon(1e-7));
      CHECK(g.y == doctest::Approx(fy).epsilon(1e-7));
    }
  }

  CHECK_THROWS_AS(grad_h_p(build_support(unit_square(), kInfiniteP), {1, 0}), InfiniteP);
}

TEST_CASE("joint convexity inequality for sliding triangles and polytopes") {
  Rng rng(17);
  auto weights = [&](double& t, double& s, double& r) {
    t = rng.uniform(0.3, 3.0);
    s = rng.uniform(0.3, 3.0);
    r = 2.0 * t * s / (t + s);
  };

  SUBCASE("triangles, with and without translation") {
    for (int i = 0; i < 40; ++i) {
      const double x1 = rng.uniform(0.5, 2.0), x3 = rng.uniform(-2.0, -0.5);
      const double y1 = rng.uniform(-0.5, 0.5), y2 = y1 + rng.uniform(0.5, 2.0);
      const double p = rng.uniform(0.5, 4.0);
      auto tri_at = [&](double x2, double x0) {
        return build_support(
            Body{Polytope2({{x1 - x0, y1}, {x2 - x0, y2}, {x3 - x0, y1}})}, p);
      };
      const double a = rng.uniform(-1.5, 1.5), b = rng.uniform(-1.5, 1.5);
      const double x0 = rng.uniform(-0.5, 0.5), x0p = rng.uniform(-0.5, 0.5);
      const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2), yp = rng.uniform(-2, 2);
      double t, s, r;
      weights(t, s, r);
      const double lhs =
          tri_at(0.5 * (a + b), 0.5 * (x0 + x0p)).h(r * Point2{x, 0.5 * (y + yp)});
      const double rhs = s / (t + s) * tri_at(a, x0).h(t * Point2{x, y}) +
                         t / (t + s) * tri_at(b, x0p).h(s * Point2{x, yp});
      CHECK(lhs <= rhs + 1e-9);
    }
  }
}
