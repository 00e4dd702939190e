#include "lpmahler/lp_polar.hpp"

#include <cmath>
#include <limits>

#include "polar_internal.hpp"

namespace lpm {

using internal::kPi;

double near_norm(const LpSupportEval& eval, Point2 y, const QuadConfig& q) {
  q.validate();
  const double r = norm(y);
  if (!(r > 0.0)) throw UsageError("near_norm: y must be nonzero");
  if (eval.infinite_p()) {
    const double h = support_classical(full_polytope(eval.body()), y);
    if (h <= 0.0) throw Divergent("near_norm: radial integral diverges in this direction");
    return h;
  }
  const Point2 u = (1.0 / r) * y;
  if (internal::divergent_direction(eval, u))
    throw Divergent("near_norm: radial integral diverges in this direction");
  return r / std::sqrt(internal::radial_m1(eval, u, q));
}

double polar_volume(const LpSupportEval& eval, const QuadConfig& q) {
  q.validate();
  if (!eval.origin_interior())
    throw OriginNotInterior("polar_volume: origin must be strictly interior to K");
  auto integrand = [&](double theta) -> quad::Vec<1> {
    return {internal::radial_m1(eval, internal::unit(theta), q)};
  };
  // Periodic trapezoid over the full circle, doubling from angular_nodes.
  const int doublings = std::min(q.max_depth, eval.infinite_p() ? 15 : 10);
  const auto v = quad::trapezoid_periodic<1>(integrand, 0.0, 2.0 * kPi, q.angular_nodes,
                                             0.5 * q.rel_tol, q.abs_tol, doublings);
  return 0.5 * v[0];
}

HalfVolumes half_plane_volumes(const LpSupportEval& eval, const QuadConfig& q) {
  q.validate();
  auto half = [&](double lo, double hi) {
    auto integrand = [&](double theta) {
      return internal::radial_m1(eval, internal::unit(theta), q);
    };
    try {
      return 0.5 * quad::gk15_adaptive_1(integrand, lo, hi, 0.5 * q.rel_tol, q.abs_tol,
                                         q.max_depth, 8);
    } catch (const Divergent&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  return {half(-0.5 * kPi, 0.5 * kPi), half(0.5 * kPi, 1.5 * kPi)};
}

std::vector<Point2> polar_boundary_sample(const LpSupportEval& eval, const QuadConfig& q, int n) {
  q.validate();
  if (n < 3) throw UsageError("polar_boundary_sample: need n >= 3");
  if (!eval.origin_interior())
    throw OriginNotInterior("polar_boundary_sample: origin must be strictly interior to K");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n;
    const Point2 u = internal::unit(theta);
    pts.push_back((1.0 / near_norm(eval, u, q)) * u);
  }
  return pts;
}

double direct_volume_check(const LpSupportEval& eval, const QuadConfig& q) {
  q.validate();
  if (!eval.origin_interior())
    throw OriginNotInterior("direct_volume_check: origin must be strictly interior to K");

  // Independent route: EXP radial transform r = e^s - 1 integrated by
  // adaptive Simpson, knit over theta by adaptive Gauss-Kronrod panels.
  auto radial = [&](Point2 u) {
    const double c = support_classical(full_polytope(eval.body()), u);
    if (eval.infinite_p()) return 1.0 / (c * c);
    const double slope = std::max(c, 1e-10);
    const double s_max = std::log1p(900.0 / slope);
    auto integrand = [&](double s) {
      const double r = std::expm1(s);
      if (!(r > 0.0)) return 0.0;
      const double g = -eval.h(r * u) + std::log(r) + s;
      return g < -745.0 ? 0.0 : std::exp(g);
    };
    return quad::simpson_adaptive(integrand, 0.0, s_max, 0.25 * q.rel_tol, q.abs_tol, q.max_depth,
                                  4);
  };
  auto angular = [&](double theta) { return radial(internal::unit(theta)); };
  return 0.5 * quad::gk15_adaptive_1(angular, 0.0, 2.0 * kPi, 0.5 * q.rel_tol, q.abs_tol,
                                     q.max_depth, q.angular_nodes / 4);
}

}  // namespace lpm
