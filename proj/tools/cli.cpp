#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpmahler/body_io.hpp"

namespace lpm::cli {

namespace {

using nlohmann::json;

double parse_p(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return kInfiniteP;
  char* end = nullptr;
  const double p = std::strtod(text.c_str(), &end);
  if (end == nullptr || *end != '\0' || !(p > 0.0))
    throw UsageError("--p must be a positive number or 'inf'");
  return p;
}

QuadConfig quad_from(const CliCommand& cmd) {
  QuadConfig q;
  if (auto it = cmd.flags.find("rel-tol"); it != cmd.flags.end()) q.rel_tol = std::stod(it->second);
  if (auto it = cmd.flags.find("abs-tol"); it != cmd.flags.end()) q.abs_tol = std::stod(it->second);
  q.validate();
  return q;
}

std::string flag(const CliCommand& cmd, const std::string& key) {
  const auto it = cmd.flags.find(key);
  return it == cmd.flags.end() ? std::string() : it->second;
}

// Results go to --out when given (prefixed by LPMAHLER_OUT_DIR for relative
// paths) and to standard output otherwise.
void emit(const CliCommand& cmd, const std::string& text) {
  const std::string out = flag(cmd, "out");
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::string path = out;
  const char* dir = std::getenv("LPMAHLER_OUT_DIR");
  if (dir != nullptr && !out.empty() && out.front() != '/')
    path = std::string(dir) + "/" + out;
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write output file: " + path);
  f << text << "\n";
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json p_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

int cmd_mp(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const MahlerResult r = mahler_p(body, parse_p(flag(cmd, "p")), quad_from(cmd));
  emit(cmd, json{{"p", p_json(r.p)},
                 {"volume_k", r.volume_k},
                 {"volume_polar", r.volume_polar},
                 {"m_p", r.m_p},
                 {"error_estimate", r.error_estimate}}
           .dump(2));
  return 0;
}

int cmd_polar_volume(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const double p = parse_p(flag(cmd, "p"));
  const QuadConfig q = quad_from(cmd);
  const double v = std::isinf(p) ? classical_polar(full_polytope(body)).area()
                                 : polar_volume(build_support(body, p), q);
  emit(cmd, json{{"p", p_json(p)}, {"volume_polar", v}}.dump(2));
  return 0;
}

int cmd_polar_boundary(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const double p = parse_p(flag(cmd, "p"));
  const QuadConfig q = quad_from(cmd);
  const int n = std::stoi(flag(cmd, "grid"));
  const auto pts = polar_boundary_sample(build_support(body, p), q, n);
  std::ostringstream csv;
  csv << "theta,x,y\n";
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * M_PI * k / n;
    csv << theta << "," << pts[static_cast<std::size_t>(k)].x << ","
        << pts[static_cast<std::size_t>(k)].y << "\n";
  }
  emit(cmd, csv.str());
  return 0;
}

int cmd_santalo(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const double p = parse_p(flag(cmd, "p"));
  const QuadConfig q = quad_from(cmd);
  const TranslatedMahler tm = mahler_p_translated(body, p, q);
  emit(cmd, json{{"p", p_json(p)},
                 {"santalo_point", point_json(tm.solution.point)},
                 {"gradient_norm", tm.solution.gradient_norm},
                 {"iterations", tm.solution.iterations},
                 {"m_p_translated", tm.m_p}}
           .dump(2));
  return 0;
}

int cmd_bergman(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const QuadConfig q = quad_from(cmd);
  Point2 imz{0.0, 0.0};
  const std::string text = flag(cmd, "imz");
  if (!text.empty() && std::sscanf(text.c_str(), "%lf,%lf", &imz.x, &imz.y) != 2)
    throw UsageError("--imz must be 'x,y'");
  const double b = bergman_diagonal(body, imz, q);
  const double vk = area(body);
  emit(cmd, json{{"im_z", point_json(imz)},
                 {"bergman_diagonal", b},
                 {"normalized", vk * vk * b}}
           .dump(2));
  return 0;
}

int cmd_slide(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const std::size_t k = static_cast<std::size_t>(std::stoul(flag(cmd, "vertex")));
  const SlidingFamily fam = make_family(body, k);
  json j{{"vertex_index", k},
         {"symmetric", fam.symmetric},
         {"xi_left", fam.xi_left},
         {"xi_right", fam.xi_right},
         {"original_x2", fam.original_x2},
         {"apex_height", fam.apex_height},
         {"chord_height", fam.chord_height()},
         {"area", area(body_at(fam, fam.original_x2))}};
  const std::string x2_text = flag(cmd, "x2");
  if (!x2_text.empty()) {
    const Body slid = body_at(fam, std::stod(x2_text));
    j["body"] = json::parse(body_to_json_text(slid));
  }
  emit(cmd, j.dump(2));
  return 0;
}

int cmd_sweep(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const std::size_t k = static_cast<std::size_t>(std::stoul(flag(cmd, "vertex")));
  const int grid = std::stoi(flag(cmd, "grid"));
  const std::string mode = flag(cmd, "mode");
  const SlidingFamily fam = make_family(body, k);
  std::ostringstream csv;
  csv << "x2,value\n";
  if (mode == "iso") {
    for (int i = 0; i < grid; ++i) {
      const double x2 = fam.xi_left + (fam.xi_right - fam.xi_left) * i / (grid - 1);
      const Body b = body_at(fam, x2);
      const double a = area(b);
      csv << x2 << "," << a * a * covariance(b).det() << "\n";
    }
  } else {
    const double p = parse_p(flag(cmd, "p"));
    for (const auto& [x2, value] : convexity_curve(fam, p, grid, quad_from(cmd)))
      csv << x2 << "," << value << "\n";
  }
  emit(cmd, csv.str());
  return 0;
}

int cmd_reduce(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const ReduceChain chain = reduce_chain(body, parse_p(flag(cmd, "p")), quad_from(cmd));
  emit(cmd, reduce_chain_to_json_text(chain));
  return 0;
}

int cmd_isotropic(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  const CovMatrix2 cov = covariance(body);
  const AffineMap2 t = isotropic_transform(body);
  emit(cmd, json{{"covariance", {{cov.c11, cov.c12}, {cov.c12, cov.c22}}},
                 {"cee", cee(body)},
                 {"transform",
                  {{"linear", {{t.a11, t.a12}, {t.a21, t.a22}}}, {"shift", point_json(t.shift)}}}}
           .dump(2));
  return 0;
}

int cmd_cee(const CliCommand& cmd) {
  const Body body = read_body_file(flag(cmd, "body"));
  emit(cmd, json{{"cee", cee(body)}}.dump(2));
  return 0;
}

int cmd_verify(const CliCommand& cmd) {
  const QuadConfig q = quad_from(cmd);
  const std::string suite = flag(cmd, "suite");
  const int cases = std::stoi(flag(cmd, "cases"));
  const std::uint64_t seed = std::stoull(flag(cmd, "seed"));
  const VerifyReport report = run_suite(suite, cases, seed, q);
  const std::string text = report_to_json_text(report);
  if (flag(cmd, "out").empty()) {
    std::cout << text << "\n";
  } else {
    emit(cmd, text);
    std::cout << "suite=" << report.suite << " cases=" << report.cases
              << " worst_violation=" << report.worst_violation
              << (report.passed() ? " PASS" : " FAIL") << "\n";
  }
  return report.passed() ? 0 : 2;
}

}  // namespace

CliCommand parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Planar convex-geometry calculator: L^p-polar bodies, L^p-Mahler volumes,"
               " Bergman kernels of tube domains, Mahler sliding and isotropic constants."};
  app.require_subcommand(1);

  CliCommand cmd;
  auto& flags = cmd.flags;

  auto add_body = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
           "--body", [&flags](const std::string& v) { flags["body"] = v; },
           "Body JSON file ({\"vertices\": [[x,y],...]} or {\"half_vertices\": ..., \"symmetric\": true})")
        ->required();
  };
  auto add_p = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option_function<std::string>(
        "--p", [&flags](const std::string& v) { flags["p"] = v; },
        "Exponent p (> 0 decimal, or 'inf' for the classical support function)");
    if (required) opt->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
        "--out", [&flags](const std::string& v) { flags["out"] = v; }, "Output path");
    sub->add_option_function<std::string>(
        "--rel-tol", [&flags](const std::string& v) { flags["rel-tol"] = v; },
        "Relative quadrature tolerance (default 1e-8)");
    sub->add_option_function<std::string>(
        "--abs-tol", [&flags](const std::string& v) { flags["abs-tol"] = v; },
        "Absolute quadrature tolerance (default 1e-12)");
  };
  auto add_default = [&](const std::string& key, const std::string& value) {
    flags.emplace(key, value);
  };

  auto* mp = app.add_subcommand(
      "mp", "L^p-Mahler volume M_p(K) = 2 |K| |K^{o,p}|; minimized by the cube among symmetric "
            "bodies and by the translated simplex in general");
  add_body(mp);
  add_p(mp);
  add_common(mp);

  auto* pv = app.add_subcommand("polar-volume", "Area of the L^p-polar body K^{o,p}");
  add_body(pv);
  add_p(pv);
  add_common(pv);

  auto* pb = app.add_subcommand("polar-boundary",
                                "Boundary samples of K^{o,p} (CSV: theta,x,y)");
  add_body(pb);
  add_p(pb);
  add_common(pb);
  pb->add_option_function<std::string>(
      "--grid", [&flags](const std::string& v) { flags["grid"] = v; }, "Sample count (default 256)");

  auto* sa = app.add_subcommand(
      "santalo", "L^p-Santalo point s_p(K), the unique translation minimizing M_p(K - x)");
  add_body(sa);
  add_p(sa);
  add_common(sa);

  auto* be = app.add_subcommand(
      "bergman", "Bergman kernel of the tube domain R^2 + iK on the diagonal; satisfies "
                 "|K|^2 B(0,0) >= pi^2/16 for symmetric K");
  add_body(be);
  add_common(be);
  be->add_option_function<std::string>(
      "--imz", [&flags](const std::string& v) { flags["imz"] = v; }, "Im z as 'x,y' (default 0,0)");

  auto* sl = app.add_subcommand(
      "slide", "Mahler-sliding family of vertex K: admissible range [xi_left, xi_right] and "
               "optionally the slid body at --x2");
  add_body(sl);
  add_common(sl);
  sl->add_option_function<std::string>(
        "--vertex", [&flags](const std::string& v) { flags["vertex"] = v; }, "Vertex index")
      ->required();
  sl->add_option_function<std::string>(
      "--x2", [&flags](const std::string& v) { flags["x2"] = v; }, "Sliding position");

  auto* sw = app.add_subcommand(
      "sweep", "Curve along a sliding family (CSV: x2,value): reciprocal polar volume "
               "(convex in x2) or |P|^4/C(P(x2)) (a convex quadratic)");
  add_body(sw);
  add_p(sw, false);
  add_common(sw);
  sw->add_option_function<std::string>(
        "--vertex", [&flags](const std::string& v) { flags["vertex"] = v; }, "Vertex index")
      ->required();
  sw->add_option_function<std::string>(
      "--grid", [&flags](const std::string& v) { flags["grid"] = v; }, "Grid size (default 21)");
  sw->add_option_function<std::string>(
        "--mode", [&flags](const std::string& v) { flags["mode"] = v; },
        "polar (needs --p) or iso")
      ->check(CLI::IsMember({"polar", "iso"}));

  auto* re = app.add_subcommand(
      "reduce", "Vertex-reduction chain by Mahler sliding; M_p never increases along the chain");
  add_body(re);
  add_p(re);
  add_common(re);

  auto* iso = app.add_subcommand(
      "isotropic", "Covariance matrix, the invariant C(K) = |K|^2 / det Cov(K) and the "
                   "transform into isotropic position");
  add_body(iso);
  add_common(iso);

  auto* ce = app.add_subcommand(
      "cee", "C(K) = |K|^2 / det Cov(K); >= 108 for all bodies, >= 144 for symmetric ones");
  add_body(ce);
  add_common(ce);

  std::string suites;
  for (const std::string& s : suite_names()) suites += (suites.empty() ? "" : ", ") + s;
  auto* ve = app.add_subcommand("verify", "Run a verification suite (" + suites + ")");
  add_common(ve);
  ve->add_option_function<std::string>(
        "--suite", [&flags](const std::string& v) { flags["suite"] = v; }, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  ve->add_option_function<std::string>(
      "--cases", [&flags](const std::string& v) { flags["cases"] = v; }, "Case count (default 20)");
  ve->add_option_function<std::string>(
      "--seed", [&flags](const std::string& v) { flags["seed"] = v; }, "Base seed (default 0)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {"help", {{"text", app.help()}}};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cmd.name = app.get_subcommands().front()->get_name();
  if (cmd.name == "polar-boundary") add_default("grid", "256");
  if (cmd.name == "sweep") {
    add_default("grid", "21");
    add_default("mode", "polar");
    if (flags["mode"] == "polar" && flags.count("p") == 0)
      throw UsageError("sweep --mode polar requires --p");
  }
  if (cmd.name == "verify") {
    add_default("cases", "20");
    add_default("seed", "0");
  }
  return cmd;
}

int run(const CliCommand& cmd) {
  try {
    if (cmd.name == "help") {
      std::cout << cmd.flags.at("text");
      return 0;
    }
    if (cmd.name == "mp") return cmd_mp(cmd);
    if (cmd.name == "polar-volume") return cmd_polar_volume(cmd);
    if (cmd.name == "polar-boundary") return cmd_polar_boundary(cmd);
    if (cmd.name == "santalo") return cmd_santalo(cmd);
    if (cmd.name == "bergman") return cmd_bergman(cmd);
    if (cmd.name == "slide") return cmd_slide(cmd);
    if (cmd.name == "sweep") return cmd_sweep(cmd);
    if (cmd.name == "reduce") return cmd_reduce(cmd);
    if (cmd.name == "isotropic") return cmd_isotropic(cmd);
    if (cmd.name == "cee") return cmd_cee(cmd);
    if (cmd.name == "verify") return cmd_verify(cmd);
    throw UsageError("unknown command: " + cmd.name);
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(const std::vector<std::string>& args) {
  try {
    return run(parse_args(args));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lpm::cli
