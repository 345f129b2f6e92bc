#include "taut/json_io.hpp"

#include "taut/error.hpp"

namespace taut {

Json to_json(const Permutation& p) { return Json{{"cycles", p.to_cycle_string()}, {"images", p.images()}}; }

Json to_json(const Partition& alpha) { return Json(alpha.parts()); }

Json to_json(const MonodromyTuple& tuple) {
  Json taus = Json::array();
  for (const auto& tau : tuple.taus) taus.push_back(to_json(tau));
  return Json{{"sigma_inf", to_json(tuple.sigma_inf)}, {"taus", std::move(taus)}};
}

Json to_json(const HurwitzValue& value) {
  const auto& p = value.problem;
  return Json{{"g", p.genus()},
              {"alpha", p.ordered_alpha()},
              {"d", p.degree()},
              {"n", p.points()},
              {"r", p.branch_points()},
              {"tuple_count", to_string(value.tuple_count)},
              {"h", to_string(value.h)},
              {"h_labeled", to_string(value.h_labeled)}};
}

HurwitzValue hurwitz_value_from_json(const Json& j) {
  try {
    HurwitzProblem problem(j.at("g").get<int>(), j.at("alpha").get<std::vector<int>>());
    HurwitzValue out{problem, Integer(j.at("tuple_count").get<std::string>()),
                     parse_rational(j.at("h").get<std::string>()),
                     parse_rational(j.at("h_labeled").get<std::string>())};
    if (j.at("d").get<int>() != problem.degree() || j.at("n").get<int>() != problem.points() ||
        j.at("r").get<int>() != problem.branch_points()) {
      throw InvalidArgument("Hurwitz record: d, n or r inconsistent with alpha");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("Hurwitz record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument(std::string("Hurwitz record: ") + e.what());
  }
}

Json to_json(const HodgeTable& table) {
  Json out = Json::array();
  for (const auto& [key, value] : table) {
    out.push_back(Json{{"g", key.g}, {"n", key.n}, {"a", key.exponents}, {"k", key.k}, {"value", to_string(value)}});
  }
  return out;
}

HodgeTable hodge_table_from_json(const Json& j) {
  HodgeTable out;
  try {
    for (const auto& row : j) {
      HodgeKey key(row.at("g").get<int>(), row.at("n").get<int>(), row.at("a").get<std::vector<int>>(),
                   row.at("k").get<int>());
      if (!out.emplace(std::move(key), parse_rational(row.at("value").get<std::string>())).second) {
        throw InvalidArgument("Hodge table: repeated key");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("Hodge table: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument(std::string("Hodge table: ") + e.what());
  }
  return out;
}

Json to_json(const ElsvReport& report) {
  return Json{{"g", report.problem.genus()},
              {"alpha", report.problem.ordered_alpha()},
              {"form", report.form == ElsvForm::labeled ? "labeled" : "unlabeled"},
              {"lhs", to_string(report.lhs)},
              {"rhs", to_string(report.rhs)},
              {"equal", report.equal}};
}

Json to_json(const StableGraph& graph) {
  Json vertices = Json::array();
  for (int v = 0; v < graph.vertex_count(); ++v) vertices.push_back(Json{{"id", v}, {"genus", graph.genera()[v]}});
  Json edges = Json::array();
  for (const auto& [u, v] : graph.edges()) edges.push_back(Json::array({u, v}));
  Json legs = Json::object();
  for (const auto& [label, v] : graph.legs()) legs[std::to_string(label)] = v;
  return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"legs", std::move(legs)}};
}

StableGraph graph_from_json(const Json& j) {
  try {
    std::vector<int> genera;
    for (const auto& v : j.at("vertices")) {
      if (v.at("id").get<int>() != static_cast<int>(genera.size())) {
        throw InvalidArgument("graph: vertex ids must be 0, 1, ... in order");
      }
      genera.push_back(v.at("genus").get<int>());
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::map<int, int> legs;
    for (const auto& [label, v] : j.at("legs").items()) legs.emplace(std::stoi(label), v.get<int>());
    return StableGraph(std::move(genera), edges, legs);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("graph: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InvalidArgument(std::string("graph: ") + e.what());
  }
}

Json to_json(const ConnectivityCertificate& cert) {
  Json classes = Json::array();
  for (std::size_t i = 0; i < cert.classes.size(); ++i) {
    classes.push_back(Json{{"hash", cert.forms[i].digest()}, {"graph", to_json(cert.classes[i])}});
  }
  Json components = Json::array();
  for (const auto& component : cert.components) {
    Json hashes = Json::array();
    for (int c : component) hashes.push_back(cert.forms[c].digest());
    components.push_back(std::move(hashes));
  }
  Json steps = Json::array();
  for (const auto& step : cert.tree) {
    steps.push_back(Json{{"from", cert.forms[step.from].digest()},
                         {"move", {{"half_edge", step.move.half_edge}, {"pairing", step.move.pairing}}},
                         {"to", cert.forms[step.to].digest()}});
  }
  return Json{{"g", cert.g},
              {"n", cert.n},
              {"legs", cert.mode == LegMode::labeled ? "labeled" : "unlabeled"},
              {"classes", std::move(classes)},
              {"component_count", cert.components.size()},
              {"components", std::move(components)},
              {"certificate", std::move(steps)},
              {"certificate_valid", check_certificate(cert)}};
}

Json to_json(const StratumHistogram& histogram) {
  Json strata = Json::array();
  for (const auto& entry : histogram.entries) {
    strata.push_back(Json{{"graph", to_json(entry.graph)},
                          {"hash", canonical_form(entry.graph).digest()},
                          {"incidences", to_string(entry.incidences)},
                          {"weight", to_string(entry.weight)}});
  }
  return Json{{"g", histogram.problem.genus()},
              {"alpha", histogram.problem.ordered_alpha()},
              {"tuple_count", to_string(histogram.tuple_count)},
              {"strata", std::move(strata)},
              {"total", to_string(histogram.total)},
              {"expected_total", to_string(histogram.expected_total)},
              {"match", histogram.match}};
}

}  // namespace taut
