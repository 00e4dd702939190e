#pragma once

#include <vector>

#include "lpmahler/lp_support.hpp"

namespace lpm {

enum class RadialTransform { TAN, EXP };

/// Tolerances and transforms governing all quadrature.
struct QuadConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 40;
  // Both transforms place panels at decay-rate-scaled geometric radii; EXP
  // needs ~35% fewer evaluations at equal accuracy, so it is the default.
  RadialTransform radial_transform = RadialTransform::EXP;
  int angular_nodes = 64;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw UsageError("QuadConfig: tolerances must be positive");
    if (angular_nodes < 16 || angular_nodes % 2 != 0)
      throw UsageError("QuadConfig: angular_nodes must be even and >= 16");
  }
};

/// Areas of the L^p-polar body in the right / left open half-planes.
/// +inf marks a divergent half (origin on or outside the body).
struct HalfVolumes {
  double i_plus;
  double i_minus;
};

/// Near norm of the L^p-polar body, ||y|| = (int_0^inf r e^{-h_p(ry)} dr)^{-1/2}.
/// For p = inf this is exactly the classical support h_K(y).
double near_norm(const LpSupportEval& eval, Point2 y, const QuadConfig& q);

/// |K^{o,p}| by adaptive angular quadrature of 1/2 int dtheta / ||u||^2.
double polar_volume(const LpSupportEval& eval, const QuadConfig& q);

HalfVolumes half_plane_volumes(const LpSupportEval& eval, const QuadConfig& q);

/// n points on the boundary of K^{o,p} at equispaced angles.
std::vector<Point2> polar_boundary_sample(const LpSupportEval& eval, const QuadConfig& q, int n);

/// Same volume through an independent pipeline (EXP radial transform plus a
/// Gauss-Kronrod angular sweep instead of the periodic-trapezoid route);
/// kept for cross-validation of polar_volume.
double direct_volume_check(const LpSupportEval& eval, const QuadConfig& q);

}  // namespace lpm
