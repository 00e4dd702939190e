#include "lpmahler/body_io.hpp"

#include <fstream>

#include <json.hpp>

namespace lpm {

namespace {

using nlohmann::json;

json points_to_json(const std::vector<Point2>& pts) {
  json arr = json::array();
  for (const Point2& p : pts) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

std::vector<Point2> points_from_json(const json& arr) {
  std::vector<Point2> pts;
  for (const auto& e : arr) pts.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  return pts;
}

}  // namespace

Body body_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("body JSON parse error: ") + e.what());
  }
  try {
    if (j.value("symmetric", false)) {
      return SymmetricPolytope2(points_from_json(j.at("half_vertices")));
    }
    return Polytope2(points_from_json(j.at("vertices")));
  } catch (const json::exception& e) {
    throw UsageError(std::string("body JSON structure error: ") + e.what());
  }
}

std::string body_to_json_text(const Body& body) {
  json j;
  if (is_symmetric(body)) {
    j["symmetric"] = true;
    j["half_vertices"] = points_to_json(std::get<SymmetricPolytope2>(body).half_vertices());
  } else {
    j["symmetric"] = false;
    j["vertices"] = points_to_json(std::get<Polytope2>(body).vertices());
  }
  return j.dump(2);
}

Body read_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open body file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return body_from_json_text(text);
}

void write_body_file(const Body& body, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write body file: " + path);
  out << body_to_json_text(body) << "\n";
}

std::string report_to_json_text(const VerifyReport& report) {
  json j;
  j["suite"] = report.suite;
  j["cases"] = report.cases;
  j["worst_violation"] = report.worst_violation;
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed();
  json fails = json::array();
  for (const VerifyFailure& f : report.failures) fails.push_back({{"seed", f.seed}, {"detail", f.detail}});
  j["failures"] = fails;
  return j.dump(2);
}

std::string reduce_chain_to_json_text(const ReduceChain& chain) {
  json steps = json::array();
  for (const ReduceStep& s : chain.steps) {
    json step{{"vertex_index", s.vertex_index},
              {"xi_left", s.xi_left},
              {"xi_right", s.xi_right},
              {"endpoint_mp", {s.endpoint_mp[0], s.endpoint_mp[1]}},
              {"chosen", s.chosen}};
    if (s.x0_balance) step["x0_balance"] = *s.x0_balance;
    steps.push_back(step);
  }
  json bodies = json::array();
  for (std::size_t i = 0; i < chain.bodies.size(); ++i) {
    bodies.push_back({{"vertices", vertex_count(chain.bodies[i])},
                      {"m_p", chain.m_p[i]},
                      {"body", nlohmann::json::parse(body_to_json_text(chain.bodies[i]))}});
  }
  json j{{"steps", steps}, {"chain", bodies}};
  return j.dump(2);
}

}  // namespace lpm
