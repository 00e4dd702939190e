#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lpmahler/errors.hpp"

namespace lpm::quad {

template <std::size_t N>
using Vec = std::array<double, N>;

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1] (positive half).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
inline void axpy(Vec<N>& acc, double w, const Vec<N>& v) {
  for (std::size_t i = 0; i < N; ++i) acc[i] += w * v[i];
}

}  // namespace detail

/// One Gauss-Kronrod 7-15 panel. err receives the rescaled error estimate of
/// the Kronrod value (|K15 - G7| estimates the error of G7 and would grossly
/// overestimate K15; the resasc-based rescaling is the standard fix). All
/// nodes are strictly interior, so endpoint singularities are never hit.
template <std::size_t N, class F>
Vec<N> gk15_panel(F&& f, double a, double b, Vec<N>& err) {
  using namespace detail;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double samples[15][N];
  for (int i = 0; i < 8; ++i) {
    const double x = h * kGK15Nodes[i];
    const Vec<N> fm = f(c - x);
    for (std::size_t j = 0; j < N; ++j) samples[i][j] = fm[j];
    if (i < 7) {
      const Vec<N> fp = f(c + x);
      for (std::size_t j = 0; j < N; ++j) samples[14 - i][j] = fp[j];
    }
  }
  Vec<N> k{}, g{};
  for (int i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const double pair = samples[i][j] + (i < 7 ? samples[14 - i][j] : 0.0);
      k[j] += kGK15WeightsK[i] * pair;
      if (i % 2 == 1) g[j] += kGK15WeightsG[i / 2] * pair;
    }
  }
  for (std::size_t j = 0; j < N; ++j) {
    const double mean = 0.5 * k[j];
    double resasc = 0.0;
    for (int i = 0; i < 8; ++i) {
      resasc += kGK15WeightsK[i] * (std::abs(samples[i][j] - mean) +
                                    (i < 7 ? std::abs(samples[14 - i][j] - mean) : 0.0));
    }
    resasc *= std::abs(h);
    k[j] *= h;
    g[j] *= h;
    double e = std::abs(k[j] - g[j]);
    if (resasc > 0.0 && e > 0.0)
      e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
    err[j] = e;
  }
  return k;
}

/// Globally adaptive Gauss-Kronrod over a list of initial panels given by
/// their boundaries: the panel with the largest normalized error estimate is
/// bisected until the estimated total error per component drops below
/// abs_tol + rel_tol * |I|.
template <std::size_t N, class F>
Vec<N> gk15_adaptive_panels(F&& f, const std::vector<double>& bounds, double rel_tol,
                            double abs_tol, int max_depth) {
  struct Panel {
    double a, b;
    Vec<N> val, err;
    double badness;  // max normalized error component; <= 0 once unsplittable
    int depth;
  };
  std::vector<Panel> panels;
  panels.reserve(bounds.size() + 32);
  Vec<N> coarse{};
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Panel p{bounds[i], bounds[i + 1], {}, {}, 0.0, 0};
    p.val = gk15_panel<N>(f, p.a, p.b, p.err);
    detail::axpy(coarse, 1.0, p.val);
    panels.push_back(p);
  }
  auto normalize = [&](Panel& p) {
    p.badness = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      p.badness = std::max(p.badness, p.err[i] / (abs_tol + rel_tol * std::abs(coarse[i])));
    if (p.depth >= max_depth) p.badness = -p.badness;
  };
  for (Panel& p : panels) normalize(p);

  // Split the worst panel while the summed normalized error exceeds 1.
  const std::size_t max_panels = panels.size() + 200;
  while (panels.size() < max_panels) {
    double total_badness = 0.0;
    std::size_t worst = panels.size();
    double worst_badness = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total_badness += std::abs(panels[i].badness);
      if (panels[i].badness > worst_badness) {
        worst_badness = panels[i].badness;
        worst = i;
      }
    }
    if (total_badness <= 1.0 || worst == panels.size()) break;
    Panel& p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    Panel right{m, p.b, {}, {}, 0.0, p.depth + 1};
    right.val = gk15_panel<N>(f, right.a, right.b, right.err);
    const double old_b = p.b;
    p.b = m;
    p.depth += 1;
    (void)old_b;
    p.val = gk15_panel<N>(f, p.a, p.b, p.err);
    normalize(p);
    normalize(right);
    panels.push_back(right);
  }

  Vec<N> total{};
  for (const Panel& p : panels) detail::axpy(total, 1.0, p.val);
  return total;
}

template <std::size_t N, class F>
Vec<N> gk15_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol, int max_depth,
                     int initial_panels = 1) {
  std::vector<double> bounds(static_cast<std::size_t>(initial_panels) + 1);
  for (int i = 0; i <= initial_panels; ++i) bounds[static_cast<std::size_t>(i)] = a + (b - a) * i / initial_panels;
  return gk15_adaptive_panels<N>(f, bounds, rel_tol, abs_tol, max_depth);
}

template <class F>
double gk15_adaptive_1(F&& f, double a, double b, double rel_tol, double abs_tol, int max_depth,
                       int initial_panels = 1) {
  auto g = [&f](double x) { return Vec<1>{f(x)}; };
  return gk15_adaptive<1>(g, a, b, rel_tol, abs_tol, max_depth, initial_panels)[0];
}

/// Adaptive Simpson with Richardson acceptance.
template <class F>
double simpson_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol, int max_depth,
                        int initial_panels = 1) {
  struct Panel {
    double a, b, fa, fm, fb, coarse;
    int depth;
  };
  auto simpson = [](double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
  };
  std::vector<Panel> stack;
  double coarse_total = 0.0;
  const double width = b - a;
  for (int i = initial_panels - 1; i >= 0; --i) {
    const double pa = a + width * i / initial_panels;
    const double pb = a + width * (i + 1) / initial_panels;
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa), fm = f(pm), fb = f(pb);
    const double s = simpson(fa, fm, fb, pb - pa);
    stack.push_back({pa, pb, fa, fm, fb, s, 0});
    coarse_total += s;
  }
  double total = 0.0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
    const double flm = f(lm), frm = f(rm);
    const double sl = simpson(p.fa, flm, p.fm, m - p.a);
    const double sr = simpson(p.fm, frm, p.fb, p.b - m);
    const double fine = sl + sr;
    const double share = (p.b - p.a) / width;
    const double tol = (abs_tol + rel_tol * std::abs(coarse_total)) * share;
    if (std::abs(fine - p.coarse) <= 15.0 * tol || p.depth >= max_depth) {
      total += fine + (fine - p.coarse) / 15.0;
    } else {
      stack.push_back({m, p.b, p.fm, frm, p.fb, sr, p.depth + 1});
      stack.push_back({p.a, m, p.fa, flm, p.fm, sl, p.depth + 1});
    }
  }
  return total;
}

/// Composite trapezoid rule for periodic integrands (f(a) == f(b)), doubling
/// the node count until successive estimates agree. Spectrally accurate for
/// smooth periodic integrands. The error test shares one scale across
/// components (max magnitude), so near-zero components do not force extra
/// doublings.
template <std::size_t N, class F>
Vec<N> trapezoid_periodic(F&& f, double a, double b, int n0, double rel_tol, double abs_tol,
                          int max_doublings) {
  const double width = b - a;
  int n = n0;
  Vec<N> sum{};
  for (int i = 0; i < n; ++i) detail::axpy(sum, 1.0, f(a + width * i / n));
  Vec<N> prev{};
  for (std::size_t c = 0; c < N; ++c) prev[c] = sum[c] * width / n;
  for (int d = 0; d < max_doublings; ++d) {
    for (int i = 0; i < n; ++i) detail::axpy(sum, 1.0, f(a + width * (i + 0.5) / n));
    n *= 2;
    Vec<N> cur;
    double scale = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      cur[c] = sum[c] * width / n;
      scale = std::max(scale, std::abs(cur[c]));
    }
    bool ok = true;
    for (std::size_t c = 0; c < N; ++c) {
      if (std::abs(cur[c] - prev[c]) > abs_tol + rel_tol * scale) ok = false;
    }
    prev = cur;
    if (ok) break;
  }
  return prev;
}

}  // namespace lpm::quad
