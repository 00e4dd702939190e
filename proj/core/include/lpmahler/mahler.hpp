#pragma once

#include <optional>

#include "lpmahler/lp_polar.hpp"

namespace lpm {

struct MahlerResult {
  double p;
  double volume_k;
  double volume_polar;
  double m_p;  // 2! * volume_k * volume_polar
  double error_estimate;
};

struct SantaloSolution {
  Point2 point;
  double gradient_norm;  // |grad log V| * diam(K) at the returned point
  int iterations;
};

/// M_p(K) = 2 |K| |K^{o,p}|; at p = inf the polar is computed exactly.
MahlerResult mahler_p(const Body& body, double p, const QuadConfig& q);

/// Minimizes x -> |(K - x)^{o,p}| by damped Newton on the log-convex
/// objective. Works for finite p and, through the closed-form radial
/// integrals, for p = inf (the classical Santalo point).
SantaloSolution santalo_point(const Body& body, double p, const QuadConfig& q,
                              std::optional<Point2> initial = std::nullopt,
                              double grad_tol = 1e-8);

struct TranslatedMahler {
  double m_p;  // inf_x M_p(K - x)
  SantaloSolution solution;
};

/// M_p(K - s_p(K)), the Santalo-translated Mahler volume.
TranslatedMahler mahler_p_translated(const Body& body, double p, const QuadConfig& q,
                                     std::optional<Point2> initial = std::nullopt);

/// Bergman kernel of the tube domain R^2 + iK on the diagonal at Im z:
/// B(z,z) = M_1(K - Im z) / ((4 pi)^2 |K|^2).
double bergman_diagonal(const Body& body, Point2 im_z, const QuadConfig& q);

/// Cached inf_x M_p(simplex - x) for the reference simplex co{e1,e2,-e1-e2},
/// computed once per p at tight tolerance.
double simplex_reference(double p, const QuadConfig& q);

/// Symmetric bodies: |K|^2 B_{T_K}(0,0) - pi^2/16. General bodies: the same
/// quantity at the optimal translation minus the simplex reference value.
double blocki_gap(const Body& body, const QuadConfig& q);

}  // namespace lpm
