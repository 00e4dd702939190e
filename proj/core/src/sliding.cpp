#include "lpmahler/sliding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lpm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double intersect_at_height(Point2 a, Point2 b, double y, double scale) {
  // x-coordinate where the line through a, b crosses the horizontal line at y
  if (std::abs(b.y - a.y) <= 1e-12 * std::max(scale, 1.0))
    throw UnboundedSlide("make_family: adjacent edge is parallel to the sliding chord");
  return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
}

// x-interval of the chord {(t, 0)} inside the polytope.
std::pair<double, double> x_axis_chord(const Polytope2& p) {
  const auto& v = p.vertices();
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    if ((a.y > 0.0) == (b.y > 0.0) && a.y != 0.0 && b.y != 0.0) continue;
    if (a.y == b.y) {  // edge on the axis
      lo = std::min({lo, a.x, b.x});
      hi = std::max({hi, a.x, b.x});
      continue;
    }
    const double x = a.x + (b.x - a.x) * (0.0 - a.y) / (b.y - a.y);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!(lo < hi)) throw OriginNotInterior("x_axis_chord: body does not straddle the x-axis");
  return {lo, hi};
}

// Classic Brent root finder on a bracket with finite values of opposite sign.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol, int max_iter) {
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (fb == 0.0 || std::abs(b - a) < xtol) return b;
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double m = 0.5 * (c - b);
    if (std::abs(m) < xtol || fb == 0.0) return b;
    if (std::abs(e) < xtol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;  // bisection
    } else {
      double s = fb / fa, p, qd;
      if (a == c) {
        p = 2.0 * m * s;
        qd = 1.0 - s;
      } else {
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        qd = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) qd = -qd;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * qd - std::abs(xtol * qd), std::abs(e * qd))) {
        e = d;
        d = p / qd;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > xtol) ? d : (m > 0.0 ? xtol : -xtol);
    fb = f(b);
  }
  return b;
}

}  // namespace

SlidingFamily make_family(const Body& body, std::size_t k) {
  const SlidingNormalization sn = normalize_for_sliding(body, k);
  const bool sym = is_symmetric(sn.body);

  std::vector<Point2> cycle =
      sym ? std::get<SymmetricPolytope2>(sn.body).half_vertices()
          : std::get<Polytope2>(sn.body).vertices();
  Point2 v1 = cycle[0];
  const Point2 apex = cycle[1];
  Point2 v3 = cycle[2];
  std::vector<Point2> rest(cycle.begin() + 3, cycle.end());

  // Snap the chord exactly horizontal; the rotation leaves ~1 ulp of skew.
  const double chord_y = 0.5 * (v1.y + v3.y);
  v1.y = chord_y;
  v3.y = chord_y;

  const double scale = full_polytope(sn.body).scale();
  const Point2 after_v3 = !rest.empty() ? rest.front() : (sym ? -v1 : Point2{});
  const Point2 before_v1 = !rest.empty() ? (sym ? -rest.back() : rest.back()) : (sym ? -v3 : Point2{});
  if (!sym && rest.empty()) throw DegenerateInput("make_family: body needs at least 4 vertices");

  const double xi_left = intersect_at_height(v3, after_v3, apex.y, scale);
  const double xi_right = intersect_at_height(v1, before_v1, apex.y, scale);
  if (!(xi_left < xi_right)) throw DegenerateInput("make_family: empty sliding range");
  const double x2 = std::clamp(apex.x, xi_left, xi_right);

  std::vector<Point2> fixed = {v1, v3};
  fixed.insert(fixed.end(), rest.begin(), rest.end());
  if (sym) {
    const std::size_t nhalf = fixed.size();
    for (std::size_t i = 0; i < nhalf; ++i) fixed.push_back(-fixed[i]);
  }

  return {sym,     v1,       v3,   apex.y, x2, xi_left, xi_right,
          std::move(rest), Polytope2(std::move(fixed)), sn.rotation};
}

SlidingFamily translated(const SlidingFamily& fam, Point2 v) {
  if (fam.symmetric) throw UsageError("translated: symmetric families cannot be translated");
  SlidingFamily out = fam;
  out.v1 = fam.v1 + v;
  out.v3 = fam.v3 + v;
  out.apex_height += v.y;
  out.original_x2 += v.x;
  out.xi_left += v.x;
  out.xi_right += v.x;
  for (Point2& p : out.rest) p = p + v;
  std::vector<Point2> fixed = fam.fixed_part.vertices();
  for (Point2& p : fixed) p = p + v;
  out.fixed_part = Polytope2(std::move(fixed));
  out.frame.shift = fam.frame.shift + v;
  return out;
}

SlidingFamily recentered_on_fixed_part(const SlidingFamily& fam) {
  return translated(fam, -1.0 * fam.fixed_part.barycenter());
}

Body body_at(const SlidingFamily& fam, double x2) {
  const double span = fam.xi_right - fam.xi_left;
  if (x2 < fam.xi_left - 1e-9 * span || x2 > fam.xi_right + 1e-9 * span)
    throw OutOfRange("body_at: x2 outside [xi_left, xi_right]");
  const Point2 apex{std::clamp(x2, fam.xi_left, fam.xi_right), fam.apex_height};

  std::vector<Point2> cycle = {fam.v1, apex, fam.v3};
  cycle.insert(cycle.end(), fam.rest.begin(), fam.rest.end());
  if (!fam.symmetric) return Polytope2(prune_nonextreme(std::move(cycle)));

  const std::size_t half_count = cycle.size();
  for (std::size_t i = 0; i < half_count; ++i) cycle.push_back(-cycle[i]);
  std::vector<Point2> pruned = prune_nonextreme(std::move(cycle));

  // Recover a half list: any window of size n/2 starting one before the apex.
  std::size_t apex_idx = pruned.size();
  for (std::size_t i = 0; i < pruned.size(); ++i) {
    if (pruned[i].x == apex.x && pruned[i].y == apex.y) {
      apex_idx = i;
      break;
    }
  }
  if (apex_idx == pruned.size() || pruned.size() % 2 != 0)
    throw DegenerateInput("body_at: symmetric pruning lost the apex");
  const std::size_t n = pruned.size();
  std::vector<Point2> half(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) half[j] = pruned[(apex_idx + n - 1 + j) % n];
  return SymmetricPolytope2(std::move(half));
}

double balancing_translation(const SlidingFamily& fam, double x2, double x2p, double p,
                             const QuadConfig& q) {
  if (fam.symmetric) throw UsageError("balancing_translation: family must be non-symmetric");
  if (std::isinf(p)) throw InvalidP("balancing_translation: p must be finite");
  if (!strictly_inside(fam.fixed_part, {0.0, 0.0}))
    throw OriginNotInterior("balancing_translation: origin must be interior to the fixed part");

  const Polytope2 body_a = std::get<Polytope2>(body_at(fam, x2));
  const Polytope2 body_b = std::get<Polytope2>(body_at(fam, x2p));
  const auto [a_lo, a_hi] = x_axis_chord(body_a);
  const auto [b_lo, b_hi] = x_axis_chord(body_b);

  // (x0,0) must stay interior to body_a and (-x0,0) interior to body_b; the
  // log-ratio difference is continuous there and blows up at the ends.
  double lo = std::max(a_lo, -b_hi);
  double hi = std::min(a_hi, -b_lo);
  const double margin = 1e-6 * (hi - lo);
  lo += margin;
  hi -= margin;

  auto log_ratio = [&](const Polytope2& b, double shift) {
    const HalfVolumes hv =
        half_plane_volumes(build_support(translate(Body{b}, {-shift, 0.0}), p), q);
    const bool pinf = std::isinf(hv.i_plus), minf = std::isinf(hv.i_minus);
    if (pinf && minf) return std::numeric_limits<double>::quiet_NaN();
    if (pinf) return kInf;
    if (minf) return -kInf;
    return std::log(hv.i_plus) - std::log(hv.i_minus);
  };
  auto objective = [&](double x0) { return log_ratio(body_a, x0) - log_ratio(body_b, -x0); };
  auto ratio_gap = [&](double x0) {
    const HalfVolumes a =
        half_plane_volumes(build_support(translate(Body{body_a}, {-x0, 0.0}), p), q);
    const HalfVolumes b =
        half_plane_volumes(build_support(translate(Body{body_b}, {x0, 0.0}), p), q);
    return std::abs(a.i_plus / a.i_minus - b.i_plus / b.i_minus);
  };

  // Chebyshev-distributed probes, escalating to 64 before giving up.
  for (const int n_probe : {17, 33, 64}) {
    std::vector<std::pair<double, double>> probes;
    for (int j = 0; j < n_probe; ++j) {
      const double t = std::cos(M_PI * j / (n_probe - 1));
      const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
      const double f = objective(x);
      if (!std::isnan(f)) probes.push_back({x, f});
    }
    std::sort(probes.begin(), probes.end());

    struct Bracket {
      double a, b, fa, fb;
    };
    std::vector<Bracket> brackets;
    for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
      const auto [xa, fa] = probes[i];
      const auto [xb, fb] = probes[i + 1];
      if (fa == 0.0) return xa;
      if ((fa < 0.0) != (fb < 0.0)) brackets.push_back({xa, xb, fa, fb});
    }
    std::sort(brackets.begin(), brackets.end(), [](const Bracket& p1, const Bracket& p2) {
      return std::abs(p1.a + p1.b) < std::abs(p2.a + p2.b);
    });

    for (const Bracket& br : brackets) {
      double a = br.a, b = br.b, fa = br.fa, fb = br.fb;
      // shrink infinite ends until Brent sees finite values
      for (int s = 0; s < 80 && (std::isinf(fa) || std::isinf(fb)); ++s) {
        const double m = 0.5 * (a + b);
        const double fm = objective(m);
        if (std::isnan(fm)) break;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
          fb = fm;
        }
      }
      if (std::isnan(fa) || std::isnan(fb) || std::isinf(fa) || std::isinf(fb)) continue;
      const double x0 =
          brent(objective, a, b, fa, fb, 1e-14 * std::max(1.0, std::abs(hi - lo)), 120);
      if (ratio_gap(x0) < 1e-8 && strictly_inside(body_a, {x0, 0.0}) &&
          strictly_inside(body_b, {-x0, 0.0}))
        return x0;
    }
  }
  std::ostringstream msg;
  msg << "balancing_translation: no sign change found in [" << lo << ", " << hi
      << "] after 64 probes (x2=" << x2 << ", x2'=" << x2p << ", p=" << p << ")";
  throw NoBracket(msg.str());
}

std::vector<std::pair<double, double>> convexity_curve(const SlidingFamily& fam, double p,
                                                       int grid, const QuadConfig& q) {
  if (grid < 5) throw UsageError("convexity_curve: grid must be >= 5");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(grid));
  std::optional<Point2> warm;
  for (int i = 0; i < grid; ++i) {
    const double x2 = fam.xi_left + (fam.xi_right - fam.xi_left) * i / (grid - 1);
    const Body b = body_at(fam, x2);
    double value;
    if (fam.symmetric) {
      value = 1.0 / polar_volume(build_support(b, p), q);
    } else {
      const TranslatedMahler tm = mahler_p_translated(b, p, q, warm);
      warm = tm.solution.point;
      value = 2.0 * area(b) / tm.m_p;
    }
    curve.push_back({x2, value});
  }
  return curve;
}

std::pair<Body, ReduceStep> reduce_once(const Body& body, double p, const QuadConfig& q) {
  const bool sym = is_symmetric(body);
  const std::size_t count =
      sym ? std::get<SymmetricPolytope2>(body).half_vertices().size() : vertex_count(body);
  if ((sym && count <= 2) || (!sym && count <= 3))
    throw AlreadyMinimal("reduce_once: body is already a minimal polytope");

  // One Santalo solve on the input warm-starts every endpoint solve (the
  // family frame is a rotation, and the optimal point moves little per slide).
  std::optional<Point2> base_santalo;
  if (!sym) base_santalo = santalo_point(body, p, q).point;
  auto endpoint_value = [&](const Body& b, const SlidingFamily& fam) {
    if (sym) return mahler_p(b, p, q).m_p;
    std::optional<Point2> warm;
    if (base_santalo) warm = fam.frame(*base_santalo);
    return mahler_p_translated(b, p, q, warm).m_p;
  };

  std::optional<std::pair<Body, ReduceStep>> best;
  double best_val = std::numeric_limits<double>::infinity();
  std::string first_error;
  for (std::size_t k = 0; k < count; ++k) {
    try {
      const SlidingFamily fam = make_family(body, k);
      const Body left = body_at(fam, fam.xi_left);
      const Body right = body_at(fam, fam.xi_right);
      const double lv = endpoint_value(left, fam);
      const double rv = endpoint_value(right, fam);
      const bool take_left = lv <= rv;
      const double val = take_left ? lv : rv;
      if (!best || val < best_val) {
        best = {take_left ? left : right,
                ReduceStep{k, fam.xi_left, fam.xi_right, {lv, rv}, take_left ? "left" : "right", {}}};
        best_val = val;
      }
    } catch (const Error& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!best) throw UnboundedSlide("reduce_once: no vertex admits a bounded slide: " + first_error);
  return *best;
}

ReduceChain reduce_chain(const Body& body, double p, const QuadConfig& q) {
  auto value = [&](const Body& b) {
    return is_symmetric(b) ? mahler_p(b, p, q).m_p : mahler_p_translated(b, p, q).m_p;
  };
  ReduceChain chain;
  chain.bodies.push_back(body);
  chain.m_p.push_back(value(body));
  while (true) {
    try {
      auto [next, step] = reduce_once(chain.bodies.back(), p, q);
      chain.m_p.push_back(step.chosen == "left" ? step.endpoint_mp[0] : step.endpoint_mp[1]);
      chain.bodies.push_back(std::move(next));
      chain.steps.push_back(std::move(step));
    } catch (const AlreadyMinimal&) {
      break;
    }
  }
  return chain;
}

}  // namespace lpm
