#pragma once

// Shared radial/angular integration engine for the L^p-polar volume, the
// half-plane volumes and the Santalo objective. Internal to the library.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "lpmahler/lp_polar.hpp"
#include "lpmahler/quadrature.hpp"

namespace lpm::internal {

inline constexpr double kPi = std::numbers::pi;

inline Point2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// The radial integral int r^w e^{-h_p(ru)} dr converges iff h_p grows along
// the ray, i.e. iff the classical support h_K(u) is positive (h_p(ru) =
// r h_K(u) - O(log r) by the Laplace expansion of the cell integrals).
inline bool divergent_direction(const LpSupportEval& eval, Point2 u) {
  if (eval.origin_interior()) return false;
  return support_classical(full_polytope(eval.body()), u) <= 0.0;
}

// Moments m_w = int_0^inf r^w e^{-h_p(r u)} dr for w = 1..count (count <= 3),
// u a unit direction. Throws Divergent when the ray integral is infinite.
//
// h_p(ru) = r h_K(u) - A - O(log r) by the Laplace expansion, so the
// integrand decays like e^{aoff - r c} with c = h_K(u) and an offset aoff
// measured by one extra evaluation. Panels are laid out geometrically in r
// from the truncation radius down (the peak sits at r = O((1 + aoff)/c),
// well resolved by the innermost panels); the integration variable follows
// QuadConfig::radial_transform. Gauss-Kronrod nodes never touch endpoints.
inline std::array<double, 3> radial_moments(const LpSupportEval& eval, Point2 u,
                                            const QuadConfig& q, int count) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  const double c = support_classical(full_polytope(eval.body()), u);
  if (c <= 0.0) throw Divergent("radial_moments: support is nonpositive along the ray");
  if (eval.infinite_p()) {
    out[0] = 1.0 / (c * c);
    if (count >= 2) out[1] = 2.0 / (c * c * c);
    if (count >= 3) out[2] = 6.0 / (c * c * c * c);
    return out;
  }

  const double aoff = std::max(0.0, 30.0 - eval.h((30.0 / c) * u));
  const double truncation = (85.0 + aoff + 3.0 * std::abs(std::log(c))) / c;
  const bool tan_mode = q.radial_transform == RadialTransform::TAN;
  constexpr int kPanels = 7;
  std::vector<double> bounds(kPanels + 1);
  bounds[0] = 0.0;
  for (int j = 1; j <= kPanels; ++j) {
    const double r = truncation / double(1 << (kPanels - j));
    bounds[static_cast<std::size_t>(j)] = tan_mode ? std::atan(r) : std::log1p(r);
  }

  auto integrand = [&](double x) -> quad::Vec<3> {
    quad::Vec<3> f{0.0, 0.0, 0.0};
    double r, log_jacobian;
    if (tan_mode) {
      r = std::tan(x);
      log_jacobian = std::log1p(r * r);
    } else {
      r = std::expm1(x);
      log_jacobian = x;  // dr = e^x dx
    }
    if (!(r > 0.0) || r > 1e300) return f;
    const double logr = std::log(r);
    const double base = -eval.h(r * u) + log_jacobian;
    for (int w = 1; w <= count; ++w) {
      const double g = base + w * logr;
      f[w - 1] = g < -745.0 ? 0.0 : std::exp(g);
    }
    return f;
  };
  const auto m =
      quad::gk15_adaptive_panels<3>(integrand, bounds, 0.25 * q.rel_tol, q.abs_tol, q.max_depth);
  for (int w = 0; w < count; ++w) out[w] = m[w];
  return out;
}

// First radial moment only: 1 / ||u||_{K^{o,p}}^2 for unit u.
inline double radial_m1(const LpSupportEval& eval, Point2 u, const QuadConfig& q) {
  return radial_moments(eval, u, q, 1)[0];
}

}  // namespace lpm::internal
