#include "lpmahler/mahler.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lpmahler/isotropic.hpp"
#include "polar_internal.hpp"

namespace lpm {

namespace {

using internal::kPi;

double diameter(const Polytope2& p) {
  double d = 0.0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, norm(v[i] - v[j]));
  return d;
}

struct Moments {
  double v;       // |(K-x)^{o,p}|
  Point2 g;       // gradient of v in x
  double h11, h12, h22;  // Hessian of v in x
};

// One angular sweep producing value, gradient and Hessian of the translated
// polar volume; the three radial moments share every h evaluation.
Moments objective_moments(const LpSupportEval& ev, const QuadConfig& q) {
  auto integrand = [&](double theta) -> quad::Vec<6> {
    const Point2 u = internal::unit(theta);
    const auto m = internal::radial_moments(ev, u, q, 3);
    return {m[0], m[1] * u.x, m[1] * u.y, m[2] * u.x * u.x, m[2] * u.x * u.y, m[2] * u.y * u.y};
  };
  const int doublings = std::min(q.max_depth, ev.infinite_p() ? 15 : 10);
  const auto s = quad::trapezoid_periodic<6>(integrand, 0.0, 2.0 * kPi, q.angular_nodes,
                                             q.rel_tol, q.abs_tol, doublings);
  return {0.5 * s[0], {0.5 * s[1], 0.5 * s[2]}, 0.5 * s[3], 0.5 * s[4], 0.5 * s[5]};
}

}  // namespace

MahlerResult mahler_p(const Body& body, double p, const QuadConfig& q) {
  if (std::isnan(p) || p <= 0.0) throw InvalidP("mahler_p: p must be > 0 or infinite");
  const double vk = area(body);
  double vp;
  double err;
  if (std::isinf(p)) {
    vp = classical_polar(full_polytope(body)).area();
    err = 1e-14 * vk * vp;
  } else {
    const LpSupportEval ev = build_support(body, p);
    vp = polar_volume(ev, q);
    err = 2.0 * q.rel_tol * 2.0 * vk * vp;
  }
  return {p, vk, vp, 2.0 * vk * vp, err};
}

namespace {

// Damped Newton on the log-convex objective x -> log |(K - x)^{o,p}|.
// Assumes a well-conditioned body (callers precondition to isotropic
// position first); returns the minimizer in the body's own frame.
SantaloSolution santalo_newton(const Body& body, double p, const QuadConfig& q,
                               std::optional<Point2> initial, double grad_tol) {
  const Polytope2& full = full_polytope(body);
  const double diam = diameter(full);
  Point2 x = initial.value_or(barycenter(body));
  if (!strictly_inside(full, x)) x = barycenter(body);

  auto log_volume = [&](Point2 pt) {
    return std::log(polar_volume(build_support(translate(body, -1.0 * pt), p), q));
  };

  double grad_norm = std::numeric_limits<double>::infinity();
  const int max_iters = 60;
  for (int iter = 1; iter <= max_iters; ++iter) {
    const LpSupportEval ev = build_support(translate(body, -1.0 * x), p);
    const Moments mo = objective_moments(ev, q);
    const Point2 g = (1.0 / mo.v) * mo.g;
    grad_norm = norm(g) * diam;
    if (grad_norm < grad_tol) return {x, grad_norm, iter};

    // Newton step on log V; the Hessian of log V is the covariance of the
    // measure e^{-h} dy, so it is positive definite.
    const double h11 = mo.h11 / mo.v - g.x * g.x;
    const double h12 = mo.h12 / mo.v - g.x * g.y;
    const double h22 = mo.h22 / mo.v - g.y * g.y;
    const double det = h11 * h22 - h12 * h12;
    Point2 d;
    if (det > 0.0 && h11 > 0.0) {
      d = {-(h22 * g.x - h12 * g.y) / det, -(h11 * g.y - h12 * g.x) / det};
    } else {
      d = (-0.1 * diam * diam) * g;
    }
    double slope = dot(g, d);
    if (slope >= 0.0) {
      d = (-0.1 * diam * diam) * g;
      slope = dot(g, d);
    }

    const double f0 = std::log(mo.v);
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Point2 xn = x + t * d;
      if (strictly_inside(full, xn) && log_volume(xn) <= f0 + 0.25 * t * slope) {
        x = xn;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    // Steps at the quadrature noise floor cannot improve the point further.
    if (moved && t * norm(d) < 1e-12 * diam) return {x, grad_norm, iter};
    if (!moved) {
      if (grad_norm < 1e4 * grad_tol) return {x, grad_norm, iter};
      throw NoConvergence("santalo_point: line search stalled at gradient norm " +
                          std::to_string(grad_norm));
    }
  }
  if (grad_norm < 1e4 * grad_tol) return {x, grad_norm, max_iters};
  throw NoConvergence("santalo_point: no convergence after " + std::to_string(max_iters) +
                      " iterations; best gradient norm " + std::to_string(grad_norm));
}

}  // namespace

SantaloSolution santalo_point(const Body& body, double p, const QuadConfig& q,
                              std::optional<Point2> initial, double grad_tol) {
  if (std::isnan(p) || p <= 0.0) throw InvalidP("santalo_point: p must be > 0 or infinite");
  q.validate();
  // Precondition to isotropic position: s_p(TK) = T(s_p(K)), and elongated
  // bodies become round, which keeps both the Newton system and the angular
  // quadrature well conditioned.
  const AffineMap2 to_iso = isotropic_transform(body);
  const Body iso = transform(to_iso, body);
  std::optional<Point2> warm;
  if (initial) warm = to_iso(*initial);
  const SantaloSolution sol = santalo_newton(iso, p, q, warm, grad_tol);
  return {to_iso.inverse()(sol.point), sol.gradient_norm, sol.iterations};
}

TranslatedMahler mahler_p_translated(const Body& body, double p, const QuadConfig& q,
                                     std::optional<Point2> initial) {
  if (std::isnan(p) || p <= 0.0) throw InvalidP("mahler_p_translated: p must be > 0 or infinite");
  q.validate();
  // Solve and evaluate in the isotropic frame; M_p is GL(2)-invariant, so
  // the translated Mahler volume is unchanged while the quadrature sees a
  // round body.
  const AffineMap2 to_iso = isotropic_transform(body);
  const Body iso = transform(to_iso, body);
  std::optional<Point2> warm;
  if (initial) warm = to_iso(*initial);
  const SantaloSolution sol = santalo_newton(iso, p, q, warm, 1e-8);
  const MahlerResult res = mahler_p(translate(iso, -1.0 * sol.point), p, q);
  return {res.m_p, {to_iso.inverse()(sol.point), sol.gradient_norm, sol.iterations}};
}

double bergman_diagonal(const Body& body, Point2 im_z, const QuadConfig& q) {
  const Polytope2& full = full_polytope(body);
  if (!strictly_inside(full, im_z))
    throw PointNotInterior("bergman_diagonal: Im z must be strictly interior to K");
  const double m1 = mahler_p(translate(body, -1.0 * im_z), 1.0, q).m_p;
  const double vk = full.area();
  const double four_pi_sq = 16.0 * kPi * kPi;
  return m1 / (four_pi_sq * vk * vk);
}

double simplex_reference(double p, const QuadConfig& q) {
  static std::map<double, double> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  QuadConfig tight = q;
  tight.rel_tol = 1e-10;
  const Polytope2 simplex(std::vector<Point2>{{1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}});
  const double value = mahler_p_translated(Body{simplex}, p, tight).m_p;
  cache.emplace(p, value);
  return value;
}

double blocki_gap(const Body& body, const QuadConfig& q) {
  const double four_pi_sq = 16.0 * kPi * kPi;
  if (is_symmetric(body)) {
    const double m1 = mahler_p(body, 1.0, q).m_p;
    return m1 / four_pi_sq - kPi * kPi / 16.0;
  }
  const double m1_star = mahler_p_translated(body, 1.0, q).m_p;
  return (m1_star - simplex_reference(1.0, q)) / four_pi_sq;
}

}  // namespace lpm
