#include "lpmahler/lp_support.hpp"

#include <algorithm>
#include <cmath>

namespace lpm {

namespace detail {

namespace {

constexpr double kSeriesSpread = 1e-4;

// Complete homogeneous symmetric polynomials h_0..h_5 of the given nodes.
template <int N>
void homogeneous_sums(const double (&s)[N], double (&h)[6]) {
  double pw[N][6];
  for (int v = 0; v < N; ++v) {
    pw[v][0] = 1.0;
    for (int k = 1; k < 6; ++k) pw[v][k] = pw[v][k - 1] * s[v];
  }
  for (int k = 0; k < 6; ++k) h[k] = 0.0;
  if constexpr (N == 3) {
    for (int i = 0; i < 6; ++i)
      for (int j = 0; i + j < 6; ++j)
        for (int l = 0; i + j + l < 6; ++l) h[i + j + l] += pw[0][i] * pw[1][j] * pw[2][l];
  } else {
    for (int i = 0; i < 6; ++i)
      for (int j = 0; i + j < 6; ++j)
        for (int l = 0; i + j + l < 6; ++l)
          for (int m = 0; i + j + l + m < 6; ++m)
            h[i + j + l + m] += pw[0][i] * pw[1][j] * pw[2][l] * pw[3][m];
  }
}

}  // namespace

double exp_divdiff1(double a, double b) {
  const double hi = std::max(a, b);
  const double d = std::abs(a - b);
  if (d == 0.0) return std::exp(a);
  return std::exp(hi) * (-std::expm1(-d)) / d;
}

double exp_divdiff2(double a, double b, double c) {
  double n[3] = {a, b, c};
  std::sort(n, n + 3);
  const double spread = n[2] - n[0];
  if (spread < kSeriesSpread) {
    const double mu = (n[0] + n[1] + n[2]) / 3.0;
    const double s[3] = {n[0] - mu, n[1] - mu, n[2] - mu};
    double h[6];
    homogeneous_sums(s, h);
    // exp[n0,n1,n2] = e^mu * sum_k h_k / (k+2)!
    const double series = h[0] / 2 + h[1] / 6 + h[2] / 24 + h[3] / 120 + h[4] / 720 + h[5] / 5040;
    return std::exp(mu) * series;
  }
  return (exp_divdiff1(n[1], n[2]) - exp_divdiff1(n[0], n[1])) / spread;
}

double exp_divdiff3(double a, double b, double c, double d) {
  double n[4] = {a, b, c, d};
  std::sort(n, n + 4);
  const double spread = n[3] - n[0];
  if (spread < kSeriesSpread) {
    const double mu = (n[0] + n[1] + n[2] + n[3]) / 4.0;
    const double s[4] = {n[0] - mu, n[1] - mu, n[2] - mu, n[3] - mu};
    double h[6];
    homogeneous_sums(s, h);
    const double series =
        h[0] / 6 + h[1] / 24 + h[2] / 120 + h[3] / 720 + h[4] / 5040 + h[5] / 40320;
    return std::exp(mu) * series;
  }
  return (exp_divdiff2(n[1], n[2], n[3]) - exp_divdiff2(n[0], n[1], n[2])) / spread;
}

}  // namespace detail

double exp_integral_triangle(const Triangle& t, Point2 w) {
  const double a1 = dot(t.v1(), w);
  const double a2 = dot(t.v2(), w);
  const double a3 = dot(t.v3(), w);
  const double m = std::max({a1, a2, a3});
  return std::exp(m) * 2.0 * t.area() * detail::exp_divdiff2(a1 - m, a2 - m, a3 - m);
}

double log_exp_integral_triangle(const Triangle& t, Point2 w) {
  const double a1 = dot(t.v1(), w);
  const double a2 = dot(t.v2(), w);
  const double a3 = dot(t.v3(), w);
  const double m = std::max({a1, a2, a3});
  return m + std::log(2.0 * t.area() * detail::exp_divdiff2(a1 - m, a2 - m, a3 - m));
}

LpSupportEval::LpSupportEval(Body body, double p, Point2 anchor)
    : p_(p), body_(std::move(body)) {
  const Polytope2& full = full_polytope(body_);
  total_area_ = full.area();
  scale_ = full.scale();
  origin_interior_ = strictly_inside(full, {0.0, 0.0});
  if (infinite_p()) return;  // vertex maxima only, no cells needed
  double covered = 0.0;
  for (const Triangle& t : triangulate_fan(full, anchor)) {
    cells_.push_back({t, t.area() / total_area_});
    covered += t.area();
  }
  if (std::abs(covered - total_area_) > 1e-12 * total_area_)
    throw DegenerateInput("build_support: triangulation does not cover the body");
}

LpSupportEval build_support(const Body& body, double p) {
  return build_support(body, p, barycenter(body));
}

LpSupportEval build_support(const Body& body, double p, Point2 anchor) {
  if (std::isnan(p) || p <= 0.0) throw InvalidP("build_support: p must be > 0 or infinite");
  return LpSupportEval(body, p, anchor);
}

double LpSupportEval::h(Point2 y) const {
  if (infinite_p()) return support_classical(full_polytope(body_), y);
  double m = -std::numeric_limits<double>::infinity();
  for (const TriangleCell& c : cells_) {
    m = std::max(m, p_ * dot(c.triangle.v1(), y));
    m = std::max(m, p_ * dot(c.triangle.v2(), y));
    m = std::max(m, p_ * dot(c.triangle.v3(), y));
  }
  double sum = 0.0;
  for (const TriangleCell& c : cells_) {
    const double a1 = p_ * dot(c.triangle.v1(), y) - m;
    const double a2 = p_ * dot(c.triangle.v2(), y) - m;
    const double a3 = p_ * dot(c.triangle.v3(), y) - m;
    sum += 2.0 * c.triangle.area() * detail::exp_divdiff2(a1, a2, a3);
  }
  return (m + std::log(sum / total_area_)) / p_;
}

Point2 LpSupportEval::grad_h(Point2 y) const {
  if (infinite_p()) throw InfiniteP("grad_h_p: gradient undefined at p = inf");
  double m = -std::numeric_limits<double>::infinity();
  for (const TriangleCell& c : cells_) {
    m = std::max(m, p_ * dot(c.triangle.v1(), y));
    m = std::max(m, p_ * dot(c.triangle.v2(), y));
    m = std::max(m, p_ * dot(c.triangle.v3(), y));
  }
  double den = 0.0;
  Point2 num{0.0, 0.0};
  for (const TriangleCell& c : cells_) {
    const Point2 v[3] = {c.triangle.v1(), c.triangle.v2(), c.triangle.v3()};
    const double a[3] = {p_ * dot(v[0], y) - m, p_ * dot(v[1], y) - m, p_ * dot(v[2], y) - m};
    const double twice_area = 2.0 * c.triangle.area();
    den += twice_area * detail::exp_divdiff2(a[0], a[1], a[2]);
    for (int j = 0; j < 3; ++j) {
      // int_T x e^{<x,w>} dx = 2|T| sum_j v_j exp[a_j, a_1, a_2, a_3]
      num = num + (twice_area * detail::exp_divdiff3(a[j], a[0], a[1], a[2])) * v[j];
    }
  }
  return (1.0 / den) * num;
}

double h_p(const LpSupportEval& eval, Point2 y) { return eval.h(y); }

Point2 grad_h_p(const LpSupportEval& eval, Point2 y) { return eval.grad_h(y); }

}  // namespace lpm
