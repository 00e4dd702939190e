#include "lpmahler/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "lpmahler/quadrature.hpp"

namespace lpm {

void parallel_cases(int n, const std::function<void(int)>& f) {
  const unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
  if (workers <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

constexpr double kPi = std::numbers::pi;

double aspect_ratio(const Body& b) {
  const CovMatrix2 c = covariance(b);
  const double mean = 0.5 * c.trace();
  const double disc = std::sqrt(std::max(mean * mean - c.det(), 0.0));
  return (mean + disc) / std::max(mean - disc, 1e-300);
}

std::vector<double> sorted_angles(Rng& rng, int n, double lo, double hi, double min_gap) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (double& x : a) x = rng.uniform(lo, hi);
  std::sort(a.begin(), a.end());
  for (int i = 0; i + 1 < n; ++i)
    if (a[i + 1] - a[i] < min_gap) return {};
  if ((hi - lo) - (a.back() - a.front()) < min_gap) return {};
  return a;
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t k) {
  return mix(seed * 0x9e3779b97f4a7c15ULL + k + 1);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller keeps the stream identical across standard libraries.
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

Body random_body(const RandomSpec& spec) {
  if (spec.vertex_count < 3) throw GenerationFailed("random_body: vertex_count must be >= 3");
  const int n = spec.vertex_count;
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Rng rng(Rng::derive(spec.seed, attempt));
    try {
      Body body = [&]() -> Body {
        if (spec.generator == Generator::CIRCLE_HULL) {
          // A quarter of the mean gap keeps triples of circle points away
          // from collinearity, so sliding endpoints stay moderately shaped.
          if (spec.symmetric) {
            const auto angles = sorted_angles(rng, n, 0.0, kPi, 0.25 * kPi / n);
            if (angles.empty()) throw GenerationFailed("gap");
            std::vector<Point2> half;
            for (double a : angles) half.push_back({std::cos(a), std::sin(a)});
            return SymmetricPolytope2(std::move(half));
          }
          const auto angles = sorted_angles(rng, n, 0.0, 2.0 * kPi, 0.5 * kPi / n);
          if (angles.empty()) throw GenerationFailed("gap");
          std::vector<Point2> pts;
          for (double a : angles) pts.push_back({std::cos(a), std::sin(a)});
          return Polytope2(std::move(pts));
        }
        // GAUSS_HULL: hull an oversampled cloud, then thin to the target
        // count. Gaussian hulls grow like sqrt(log N), so the cloud grows
        // with the attempt number until enough extreme points show up.
        std::vector<Point2> pts;
        const int cloud = std::min(
            (3 * n + 8) * (1 + static_cast<int>(attempt) * static_cast<int>(attempt)), 100000);
        for (int i = 0; i < cloud; ++i) {
          const Point2 p{rng.normal(), rng.normal()};
          pts.push_back(p);
          if (spec.symmetric) pts.push_back(-p);
        }
        const Polytope2 hull = convex_hull(pts);
        const std::size_t have = hull.size();
        const std::size_t want = static_cast<std::size_t>(spec.symmetric ? 2 * n : n);
        if (have < want) throw GenerationFailed("hull too small");
        if (spec.symmetric) {
          const std::size_t have_half = have / 2;
          std::vector<Point2> half(static_cast<std::size_t>(n));
          for (int j = 0; j < n; ++j)
            half[static_cast<std::size_t>(j)] =
                hull.vertices()[static_cast<std::size_t>(j) * have_half / static_cast<std::size_t>(n)];
          return SymmetricPolytope2(std::move(half));
        }
        std::vector<Point2> verts(want);
        for (std::size_t j = 0; j < want; ++j) verts[j] = hull.vertices()[j * have / want];
        return Polytope2(std::move(verts));
      }();
      if (vertex_count(body) != static_cast<std::size_t>(spec.symmetric ? 2 * n : n)) continue;
      if (aspect_ratio(body) > 50.0) continue;
      return body;
    } catch (const Error&) {
      continue;
    }
  }
  throw GenerationFailed("random_body: no admissible body after 100 attempts");
}

VerifyReport check_ball_hypothesis(const SlidingFamily& fam, double p, int samples,
                                   const QuadConfig& q) {
  if (!fam.symmetric) throw UsageError("check_ball_hypothesis: family must be symmetric");
  VerifyReport report{"ball_hypothesis", samples, 0.0, 1e-8, {}};
  double worst = std::numeric_limits<double>::infinity();
  Rng rng(Rng::derive(fam.rest.size() + 77, static_cast<std::uint64_t>(samples)));
  for (int i = 0; i < samples; ++i) {
    const double x2 = rng.uniform(fam.xi_left, fam.xi_right);
    const double x2p = rng.uniform(fam.xi_left, fam.xi_right);
    const double y = rng.uniform(-2.0, 2.0);
    const double yp = rng.uniform(-2.0, 2.0);
    const double t = rng.uniform(0.4, 2.5);
    const double s = rng.uniform(0.4, 2.5);
    const double r = 2.0 * t * s / (t + s);

    const LpSupportEval ea = build_support(body_at(fam, x2), p);
    const LpSupportEval eb = build_support(body_at(fam, x2p), p);
    const LpSupportEval em = build_support(body_at(fam, 0.5 * (x2 + x2p)), p);

    // hypothesis: H(r) >= F(t)^{s/(t+s)} G(s)^{t/(t+s)} on the exp(-h) curves
    const double lhs = em.h(r * Point2{1.0, 0.5 * (y + yp)});
    const double rhs =
        s / (t + s) * ea.h(t * Point2{1.0, y}) + t / (t + s) * eb.h(s * Point2{1.0, yp});
    const double hyp_margin = rhs - lhs;

    // conclusion at q = 2: midpoint convexity of the near norm
    const double con_margin = 0.5 * near_norm(ea, {1.0, y}, q) + 0.5 * near_norm(eb, {1.0, yp}, q) -
                              near_norm(em, {1.0, 0.5 * (y + yp)}, q);

    const double margin = std::min(hyp_margin, con_margin);
    worst = std::min(worst, margin);
    if (margin < -report.tolerance) {
      std::ostringstream d;
      d << "sample " << i << ": hypothesis margin " << hyp_margin << ", conclusion margin "
        << con_margin;
      report.failures.push_back({static_cast<std::uint64_t>(i), d.str()});
    }
  }
  report.worst_violation = worst;
  return report;
}

VerifyReport check_bbl(int samples, std::uint64_t seed) {
  VerifyReport report{"bbl", samples, 0.0, 1e-9, {}};
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
    const int kind = static_cast<int>(rng.index(3));
    const double c0 = rng.uniform(0.2, 2.0), c1 = rng.uniform(0.2, 2.0), c2 = rng.uniform(0.2, 2.0);
    const double z0 = rng.uniform(-1.0, 1.0), xo = rng.uniform(-1.0, 1.0);
    const double al = rng.uniform(-1.5, 1.5), be = rng.uniform(-1.5, 1.5), ga = rng.uniform(-1.0, 1.0);
    const double a1 = rng.uniform(0.5, 2.0), a2 = rng.uniform(-2.0, -0.5);
    const double floor = rng.uniform(0.3, 1.5);
    auto f = [&](double z, double x2) {
      switch (kind) {
        case 0:  // quadratic plus a convex max term
          return c0 + c1 * (z - z0) * (z - z0) + c2 * (x2 - xo) * (x2 - xo) +
                 std::abs(al * z + be * x2 + ga);
        case 1:  // max of two affine pieces with a positive floor
          return std::max({a1 * z + be * x2 + c0 + std::abs(al) + std::abs(be),
                           a2 * z - be * x2 + c1 + std::abs(al) + std::abs(be), floor}) +
                 0.01 * z * z;
        default:  // independent of x2: the curve must be constant
          return c0 + c1 * (z - z0) * (z - z0);
      }
    };
    auto reciprocal_integral = [&](double x2) {
      auto integrand = [&](double v) {
        const double z = std::tan(v);
        const double c = std::cos(v);
        const double fv = f(z, x2);
        return 1.0 / (fv * fv * c * c);
      };
      const double val =
          quad::gk15_adaptive_1(integrand, -0.5 * kPi, 0.5 * kPi, 1e-11, 1e-14, 40, 8);
      return 1.0 / val;
    };
    const double xa = rng.uniform(-1.0, 1.0);
    const double xb = rng.uniform(-1.0, 1.0);
    const double margin =
        0.5 * reciprocal_integral(xa) + 0.5 * reciprocal_integral(xb) -
        reciprocal_integral(0.5 * (xa + xb));
    worst = std::min(worst, margin);
    if (margin < -report.tolerance) {
      std::ostringstream d;
      d << "kind " << kind << ", margin " << margin;
      report.failures.push_back({Rng::derive(seed, static_cast<std::uint64_t>(i)), d.str()});
    }
  }
  report.worst_violation = worst;
  return report;
}

namespace {

Body random_symmetric(std::uint64_t seed, int half_lo, int half_hi) {
  Rng pick(seed);
  const int half = half_lo + static_cast<int>(pick.index(static_cast<std::size_t>(half_hi - half_lo + 1)));
  const Generator gen = pick.index(2) == 0 ? Generator::CIRCLE_HULL : Generator::GAUSS_HULL;
  return random_body({seed, half, true, gen});
}

Body random_general(std::uint64_t seed, int lo, int hi) {
  Rng pick(seed);
  const int n = lo + static_cast<int>(pick.index(static_cast<std::size_t>(hi - lo + 1)));
  const Generator gen = pick.index(2) == 0 ? Generator::CIRCLE_HULL : Generator::GAUSS_HULL;
  return random_body({seed, n, false, gen});
}

SlidingFamily random_family(std::uint64_t seed, bool symmetric, const QuadConfig&) {
  for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
    const std::uint64_t s = Rng::derive(seed, 1000 + attempt);
    try {
      const Body b = symmetric ? random_symmetric(s, 3, 4) : random_general(s, 4, 6);
      Rng pick(Rng::derive(s, 7));
      const std::size_t k = pick.index(symmetric
                                           ? std::get<SymmetricPolytope2>(b).half_vertices().size()
                                           : vertex_count(b));
      SlidingFamily fam = make_family(b, k);
      if (!symmetric) fam = recentered_on_fixed_part(fam);
      return fam;
    } catch (const Error&) {
      continue;
    }
  }
  throw GenerationFailed("random_family: no admissible family");
}

struct CaseResult {
  double violation = 0.0;
  std::string detail;
};

VerifyReport collect(const std::string& name, int cases, double tolerance,
                     const std::function<CaseResult(int)>& run_case) {
  std::vector<CaseResult> results(static_cast<std::size_t>(cases));
  parallel_cases(cases, [&](int i) {
    try {
      results[static_cast<std::size_t>(i)] = run_case(i);
    } catch (const std::exception& e) {
      results[static_cast<std::size_t>(i)] = {-std::numeric_limits<double>::infinity(),
                                              std::string("case threw: ") + e.what()};
    }
  });
  VerifyReport report{name, cases, std::numeric_limits<double>::infinity(), tolerance, {}};
  for (int i = 0; i < cases; ++i) {
    const CaseResult& r = results[static_cast<std::size_t>(i)];
    report.worst_violation = std::min(report.worst_violation, r.violation);
    if (r.violation < -tolerance)
      report.failures.push_back({static_cast<std::uint64_t>(i), r.detail});
  }
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "blocki_sym",  "blocki_gen",  "mp_sym_min",  "mp_gen_min",    "slide_convexity",
      "balance",     "iso_min_sym", "iso_min_gen", "consistency",   "gl_invariance",
      "hausdorff_cee"};
  return names;
}

VerifyReport run_suite(const std::string& name, int cases, std::uint64_t seed,
                       const QuadConfig& q) {
  q.validate();
  if (cases < 1) throw UsageError("run_suite: cases must be >= 1");

  if (name == "blocki_sym") {
    return collect(name, cases, 1e-6, [&](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const Body body = random_symmetric(s, 3, 6);
      const double gap = blocki_gap(body, q);
      std::ostringstream d;
      d << "seed " << s << ": |K|^2 B - pi^2/16 = " << gap;
      return CaseResult{gap, d.str()};
    });
  }
  if (name == "blocki_gen") {
    const double ref = simplex_reference(1.0, q);
    return collect(name, cases, 1e-4, [&](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const Body body = random_general(s, 4, 8);
      const double m1 = mahler_p_translated(body, 1.0, q).m_p;
      const double rel = (m1 - ref) / ref;
      std::ostringstream d;
      d << "seed " << s << ": relative slack " << rel;
      return CaseResult{rel, d.str()};
    });
  }
  if (name == "mp_sym_min") {
    const std::vector<double> ps = {0.5, 1.0, 2.0, 8.0, kInfiniteP};
    const SymmetricPolytope2 cube(std::vector<Point2>{{1.0, 1.0}, {-1.0, 1.0}});
    std::vector<double> refs;
    for (double p : ps) refs.push_back(mahler_p(Body{cube}, p, q).m_p);
    return collect(name, cases, 1e-5, [&, refs](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const Body body = random_symmetric(s, 3, 6);
      CaseResult r{std::numeric_limits<double>::infinity(), {}};
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const double mp = mahler_p(body, ps[j], q).m_p;
        const double rel = (mp - refs[j]) / refs[j];
        if (rel < r.violation) {
          std::ostringstream d;
          d << "seed " << s << ", p = " << ps[j] << ": relative slack " << rel;
          r = {rel, d.str()};
        }
      }
      return r;
    });
  }
  if (name == "mp_gen_min") {
    const std::vector<double> ps = {1.0, 2.0};
    std::vector<double> refs;
    for (double p : ps) refs.push_back(simplex_reference(p, q));
    return collect(name, cases, 1e-4, [&, refs](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const Body body = random_general(s, 4, 7);
      CaseResult r{std::numeric_limits<double>::infinity(), {}};
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const double mp = mahler_p_translated(body, ps[j], q).m_p;
        const double rel = (mp - refs[j]) / refs[j];
        if (rel < r.violation) {
          std::ostringstream d;
          d << "seed " << s << ", p = " << ps[j] << ": relative slack " << rel;
          r = {rel, d.str()};
        }
      }
      return r;
    });
  }
  if (name == "slide_convexity") {
    return collect(name, cases, 0.0, [&](int i) {
      const bool symmetric = i < cases / 2;
      const double p = symmetric ? 2.0 : 1.0;
      const double tol = symmetric ? 1e-7 : 1e-6;
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const SlidingFamily fam = random_family(s, symmetric, q);
      const auto curve = convexity_curve(fam, p, 21, q);
      double scale = 0.0;
      for (const auto& [x, v] : curve) scale = std::max(scale, std::abs(v));
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t j = 1; j + 1 < curve.size(); ++j) {
        const double d2 = curve[j - 1].second - 2.0 * curve[j].second + curve[j + 1].second;
        margin = std::min(margin, d2 / scale + tol);
      }
      std::ostringstream d;
      d << "seed " << s << (symmetric ? " (sym)" : " (gen)") << ": worst slack " << margin;
      return CaseResult{margin, d.str()};
    });
  }
  if (name == "balance") {
    return collect(name, cases, 1e-8, [&](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const SlidingFamily fam = random_family(s, false, q);
      Rng rng(Rng::derive(s, 3));
      const double x2 = rng.uniform(fam.xi_left, fam.xi_right);
      const double x2p = rng.uniform(fam.xi_left, fam.xi_right);
      try {
        const double x0 = balancing_translation(fam, x2, x2p, 1.0, q);
        const Polytope2 a = std::get<Polytope2>(body_at(fam, x2));
        const Polytope2 b = std::get<Polytope2>(body_at(fam, x2p));
        const HalfVolumes ha = half_plane_volumes(build_support(translate(Body{a}, {-x0, 0.0}), 1.0), q);
        const HalfVolumes hb = half_plane_volumes(build_support(translate(Body{b}, {x0, 0.0}), 1.0), q);
        const double gap = std::abs(ha.i_plus / ha.i_minus - hb.i_plus / hb.i_minus);
        const bool interior = strictly_inside(a, {x0, 0.0}) && strictly_inside(b, {-x0, 0.0});
        std::ostringstream d;
        d << "seed " << s << ": ratio gap " << gap << (interior ? "" : " (translate exits body)");
        return CaseResult{interior ? -gap : -1.0, d.str()};
      } catch (const Error& e) {
        return CaseResult{-1.0, std::string("seed ") + std::to_string(s) + ": " + e.what()};
      }
    });
  }
  if (name == "iso_min_sym" || name == "iso_min_gen") {
    const bool symmetric = name == "iso_min_sym";
    const double bound = symmetric ? 144.0 : 108.0;
    return collect(name, cases, 1e-6, [&](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      const Body body = symmetric ? random_symmetric(s, 3, 7) : random_general(s, 3, 12);
      const double slack = cee(body) - bound;
      std::ostringstream d;
      d << "seed " << s << ": C(K) - " << bound << " = " << slack;
      return CaseResult{slack, d.str()};
    });
  }
  if (name == "consistency") {
    const std::vector<double> ps = {0.5, 1.0, 2.0, 8.0};
    return collect(name, cases, 0.0, [&](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      Rng pick(Rng::derive(s, 5));
      const double p = ps[pick.index(ps.size())];
      Body body = pick.index(2) == 0 ? random_symmetric(s, 3, 5) : random_general(s, 4, 7);
      if (!is_symmetric(body)) body = translate(body, -1.0 * barycenter(body));
      const LpSupportEval ev = build_support(body, p);
      const double pv = polar_volume(ev, q);
      const double dv = direct_volume_check(ev, q);
      const HalfVolumes hv = half_plane_volumes(ev, q);
      const double gap_pipelines = std::abs(pv - dv) / pv;
      const double gap_halves = std::abs(hv.i_plus + hv.i_minus - pv) / pv;
      const double margin = std::min(2.0 * q.rel_tol - gap_pipelines, 1e-8 - gap_halves);
      std::ostringstream d;
      d << "seed " << s << ", p = " << p << ": pipeline gap " << gap_pipelines << ", half-sum gap "
        << gap_halves;
      return CaseResult{margin, d.str()};
    });
  }
  if (name == "gl_invariance") {
    return collect(name, cases, 0.0, [&](int i) {
      const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
      Rng rng(Rng::derive(s, 9));
      Body body = rng.index(2) == 0 ? random_symmetric(s, 3, 5) : random_general(s, 4, 7);
      if (!is_symmetric(body)) body = translate(body, -1.0 * barycenter(body));
      AffineMap2 map;
      do {
        map.a11 = rng.uniform(-2.0, 2.0);
        map.a12 = rng.uniform(-2.0, 2.0);
        map.a21 = rng.uniform(-2.0, 2.0);
        map.a22 = rng.uniform(-2.0, 2.0);
      } while (std::abs(map.det()) < 0.3 || std::abs(map.det()) > 5.0);
      const double p = rng.index(2) == 0 ? 1.0 : 2.0;
      const Body image = transform(map, body);
      const double m_gap =
          std::abs(mahler_p(image, p, q).m_p - mahler_p(body, p, q).m_p) / mahler_p(body, p, q).m_p;
      AffineMap2 affine = map;
      affine.shift = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const double c_gap = std::abs(cee(transform(affine, body)) - cee(body)) / cee(body);
      const double margin = std::min(1e-6 - m_gap, 1e-9 - c_gap);
      std::ostringstream d;
      d << "seed " << s << ": M_p gap " << m_gap << ", C gap " << c_gap;
      return CaseResult{margin, d.str()};
    });
  }
  if (name == "hausdorff_cee") {
    const double limit = 16.0 * kPi * kPi;
    std::vector<double> gaps;
    for (int k : {12, 24, 48, 96}) {
      std::vector<Point2> verts;
      for (int i = 0; i < k; ++i)
        verts.push_back({std::cos(2.0 * kPi * i / k), std::sin(2.0 * kPi * i / k)});
      gaps.push_back(std::abs(cee(Body{Polytope2(std::move(verts))}) - limit));
    }
    VerifyReport report{name, 4, 0.0, 0.0, {}};
    double margin = std::min({gaps[0] - gaps[1], gaps[1] - gaps[2], gaps[2] - gaps[3],
                              0.01 * limit - gaps[3]});
    report.worst_violation = margin;
    if (margin < 0.0) {
      std::ostringstream d;
      d << "gaps " << gaps[0] << " " << gaps[1] << " " << gaps[2] << " " << gaps[3];
      report.failures.push_back({seed, d.str()});
    }
    return report;
  }
  throw UnknownSuite("run_suite: unknown suite '" + name + "'");
}

}  // namespace lpm
