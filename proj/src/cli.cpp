#include "taut/cli.hpp"

#include "taut/degeneration.hpp"
#include "taut/elsv.hpp"
#include "taut/error.hpp"
#include "taut/graphs.hpp"
#include "taut/hodge_cache.hpp"
#include "taut/hurwitz.hpp"
#include "taut/json_io.hpp"
#include "taut/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <memory>
#include <map>
#include <optional>
#include <ostream>
#include <set>

namespace taut {

namespace {

struct Options {
  int genus = 0;
  int n = 0;
  std::string alpha;
  std::optional<int> max_part;
  std::string method = "fast";
  std::string action;
  int threads = 1;
  std::uint64_t budget = SearchOptions{}.budget;
  bool no_cache = false;
  std::string format = "json";
};

struct Outcome {
  Json json;
  std::vector<std::vector<std::string>> csv;  // first row is the header
  int exit_code = 0;
};

struct CacheState {
  std::unique_ptr<HodgeCache> cache;
  Json report = Json{{"enabled", false}};
  int hits = 0;
  int stored = 0;
};

std::string fnv1a(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string join(const std::vector<int>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

std::string graph_cell(const StableGraph& graph) {
  std::string edges;
  for (const auto& [u, v] : graph.edges()) edges += (edges.empty() ? "" : " ") + std::to_string(u) + "-" + std::to_string(v);
  std::string legs;
  for (const auto& [label, v] : graph.legs()) legs += (legs.empty() ? "" : " ") + std::to_string(label) + ":" + std::to_string(v);
  return "V=" + std::to_string(graph.vertex_count()) + " E=[" + edges + "] L=[" + legs + "]";
}

SearchOptions search_options(const Options& o) { return SearchOptions{o.budget, o.threads}; }

HurwitzProblem problem_from(const Options& o) {
  if (o.genus < 0) throw DomainError("genus must be non-negative");
  return HurwitzProblem(o.genus, parse_int_list(o.alpha));
}

// Hurwitz value by the requested method; "both" cross-checks the two.
HurwitzValue hurwitz_value(const HurwitzProblem& problem, const Options& o, CacheState& cache,
                           std::vector<HurwitzValue>& fresh) {
  if (o.method == "fast" && cache.cache) {
    if (auto hit = cache.cache->find_hurwitz(problem.genus(), problem.ordered_alpha())) {
      ++cache.hits;
      return *hit;
    }
  }
  HurwitzValue value = o.method == "brute" ? hurwitz_brute(problem, search_options(o)) : hurwitz_fast(problem);
  if (o.method == "both") {
    const auto brute = hurwitz_brute(problem, search_options(o));
    if (brute.tuple_count != value.tuple_count) {
      throw InvariantViolation("fast and brute Hurwitz counts differ for alpha = (" +
                               join(problem.ordered_alpha(), ",") + ")");
    }
  }
  fresh.push_back(value);
  return value;
}

void store_hurwitz(CacheState& cache, const std::vector<HurwitzValue>& fresh) {
  if (!cache.cache || fresh.empty()) return;
  try {
    cache.cache->store_hurwitz(fresh);
    cache.stored += static_cast<int>(fresh.size());
  } catch (const std::exception& e) {
    cache.report["error"] = e.what();
  }
}

Outcome cmd_hurwitz(const Options& o, CacheState& cache) {
  const auto problem = problem_from(o);
  Outcome out;
  std::vector<HurwitzValue> fresh;
  if (o.method == "both") {
    const auto fast = hurwitz_fast(problem);
    const auto brute = hurwitz_brute(problem, search_options(o));
    const bool equal = fast.tuple_count == brute.tuple_count && fast.h == brute.h;
    out.json = to_json(brute);
    out.json["method"] = "both";
    out.json["fast"] = to_json(fast);
    out.json["brute"] = to_json(brute);
    out.json["verdict"] = equal ? "equal" : "different";
    out.exit_code = equal ? 0 : 1;
    fresh.push_back(fast);
  } else {
    const auto value = hurwitz_value(problem, o, cache, fresh);
    out.json = to_json(value);
    out.json["method"] = o.method;
  }
  store_hurwitz(cache, fresh);

  const auto& j = out.json;
  out.csv.push_back({"g", "alpha", "d", "n", "r", "tuple_count", "h", "h_labeled", "method"});
  out.csv.push_back({std::to_string(problem.genus()), join(problem.ordered_alpha(), ","), std::to_string(problem.degree()),
                     std::to_string(problem.points()), std::to_string(problem.branch_points()),
                     j["tuple_count"].get<std::string>(), j["h"].get<std::string>(), j["h_labeled"].get<std::string>(),
                     o.method});
  if (o.method == "both") {
    out.csv[0].push_back("verdict");
    out.csv[1].push_back(j["verdict"].get<std::string>());
  }
  return out;
}

constexpr int kMaxAutoGrid = 12;

Outcome cmd_elsv_verify(const Options& o, CacheState& cache) {
  if (o.genus < 0) throw DomainError("genus must be non-negative");
  require_elsv_range(o.genus, o.n);
  const auto basis = polynomial_model(o.genus, o.n);

  std::map<std::vector<int>, HurwitzValue> values;
  std::vector<HurwitzValue> fresh;
  auto evaluations_for = [&](int max_part) {
    std::vector<Evaluation> evals;
    for (auto& alpha : evaluation_grid(o.n, max_part)) {
      auto it = values.find(alpha);
      if (it == values.end()) {
        it = values.emplace(alpha, hurwitz_value(HurwitzProblem(o.genus, alpha), o, cache, fresh)).first;
      }
      evals.push_back({alpha, scaled_hurwitz(it->second)});
    }
    return evals;
  };

  int max_part = 0;
  std::vector<Evaluation> evals;
  std::optional<Interpolation> solved;
  if (o.max_part) {
    if (*o.max_part < 1) throw InvalidArgument("--max-part must be at least 1");
    max_part = *o.max_part;
    evals = evaluations_for(max_part);
    solved = interpolate(basis, evals);
  } else {
    // Grow the grid until the system has full rank and two held-out points.
    for (max_part = 1;; ++max_part) {
      evals = evaluations_for(max_part);
      try {
        auto attempt = interpolate(basis, evals);
        if (attempt.held_out_points.size() >= 2) {
          solved = std::move(attempt);
          break;
        }
      } catch (const RankDeficient&) {
        if (max_part >= kMaxAutoGrid) throw;
      }
      if (max_part >= kMaxAutoGrid) {
        throw RankDeficient("grid up to max part " + std::to_string(kMaxAutoGrid) + " leaves fewer than 2 held-out points",
                            static_cast<int>(basis.size()), static_cast<int>(basis.size()));
      }
    }
  }
  store_hurwitz(cache, fresh);
  const auto& table = solved->table;

  if (cache.cache) {
    if (auto cached = cache.cache->find_hodge(o.genus, o.n)) {
      ++cache.hits;
      if (*cached != table) throw InvariantViolation("solved Hodge table differs from the cached table");
    } else {
      try {
        cache.cache->store_hodge(o.genus, o.n, table);
        ++cache.stored;
      } catch (const std::exception& e) {
        cache.report["error"] = e.what();
      }
    }
  }

  std::set<std::vector<int>> held_out(solved->held_out_points.begin(), solved->held_out_points.end());
  Outcome out;
  Json points = Json::array();
  out.csv.push_back({"record", "alpha", "role", "form", "lhs", "rhs", "equal", "a", "k", "value"});
  bool all_equal = true;
  for (const auto& ev : evals) {
    const auto check = verify_elsv(values.at(ev.alpha), table);
    const std::string role = held_out.contains(ev.alpha) ? "held_out" : "solve";
    all_equal = all_equal && check.equal();
    points.push_back(Json{{"alpha", ev.alpha},
                          {"role", role},
                          {"h", to_string(values.at(ev.alpha).h)},
                          {"unlabeled", to_json(check.unlabeled)},
                          {"labeled", to_json(check.labeled)},
                          {"equal", check.equal()}});
    for (const auto* report : {&check.unlabeled, &check.labeled}) {
      out.csv.push_back({"point", join(ev.alpha, ","), role, report->form == ElsvForm::labeled ? "labeled" : "unlabeled",
                         to_string(report->lhs), to_string(report->rhs), report->equal ? "true" : "false", "", "", ""});
    }
  }
  for (const auto& [key, value] : table) {
    out.csv.push_back({"hodge", "", "", "", "", "", "", join(key.exponents, ","), std::to_string(key.k), to_string(value)});
  }
  out.json = Json{{"g", o.genus},
                  {"n", o.n},
                  {"max_part", max_part},
                  {"unknowns", basis.size()},
                  {"solving_points", solved->solving_points.size()},
                  {"held_out_points", solved->held_out_points.size()},
                  {"table", to_json(table)},
                  {"points", std::move(points)},
                  {"all_equal", all_equal}};
  out.exit_code = all_equal ? 0 : 1;
  return out;
}

Outcome cmd_graphs(const Options& o) {
  if (o.genus < 0 || o.n < 0) throw DomainError("genus and n must be non-negative");
  Outcome out;
  if (o.action == "enumerate") {
    const auto graphs = enumerate_top_strata(o.genus, o.n);
    Json list = Json::array();
    out.csv.push_back({"hash", "graph"});
    for (const auto& graph : graphs) {
      const auto hash = canonical_form(graph).digest();
      list.push_back(Json{{"hash", hash}, {"graph", to_json(graph)}});
      out.csv.push_back({hash, graph_cell(graph)});
    }
    out.json = Json{{"g", o.genus}, {"n", o.n}, {"count", graphs.size()}, {"graphs", std::move(list)}};
    return out;
  }

  out.json = Json{{"g", o.genus}, {"n", o.n}};
  out.csv.push_back({"legs", "from", "half_edge", "pairing", "to"});
  for (const auto mode : {LegMode::labeled, LegMode::unlabeled}) {
    const auto cert = connectivity_certificate(o.genus, o.n, mode);
    Json j = to_json(cert);
    std::vector<int> sizes;
    for (const auto& c : cert.components) sizes.push_back(static_cast<int>(c.size()));
    j["component_sizes"] = sizes;
    if (!j["certificate_valid"].get<bool>()) out.exit_code = 1;
    const std::string name = mode == LegMode::labeled ? "labeled" : "unlabeled";
    for (const auto& step : j["certificate"]) {
      out.csv.push_back({name, step["from"].get<std::string>(), std::to_string(step["move"]["half_edge"].get<int>()),
                         std::to_string(step["move"]["pairing"].get<int>()), step["to"].get<std::string>()});
    }
    out.json[name] = std::move(j);
  }
  out.json["components"] = out.json["labeled"]["component_count"];
  out.json["connected"] = out.json["components"].get<int>() == 1;
  return out;
}

Outcome cmd_degenerate(const Options& o) {
  const auto problem = problem_from(o);
  const auto histogram = hurwitz_to_strata(problem, search_options(o));
  Outcome out;
  out.json = to_json(histogram);
  out.exit_code = histogram.match ? 0 : 1;
  out.csv.push_back({"record", "hash", "incidences", "weight"});
  for (const auto& entry : histogram.entries) {
    out.csv.push_back({"stratum", canonical_form(entry.graph).digest(), to_string(entry.incidences), to_string(entry.weight)});
  }
  out.csv.push_back({"total", "", to_string(histogram.tuple_count), to_string(histogram.total)});
  out.csv.push_back({"expected_total", "", "", to_string(histogram.expected_total)});
  return out;
}

std::string render(const Outcome& outcome, const std::string& format) {
  if (format == "json") return outcome.json.dump(2) + "\n";
  std::string text;
  for (const auto& row : outcome.csv) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_cell(row[i]);
    text += "\n";
  }
  return text;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::budget_exceeded: return "budget_exceeded";
    case ErrorKind::invalid_domain: return "invalid_domain";
    case ErrorKind::rank_deficient: return "rank_deficient";
    case ErrorKind::internal: break;
  }
  return "internal";
}

std::string error_text(ErrorKind kind, const std::string& message, const Json& extra = Json::object()) {
  Json j{{"kind", kind_name(kind)}, {"message", message}, {"exit_code", static_cast<int>(kind)}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return Json{{"error", std::move(j)}}.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"Hurwitz numbers, ELSV interpolation and top strata of Mbar_{g,n}", "taut"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--budget", o.budget, "largest oracle search space (d(d-1)/2)^r");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz number of a ramification profile");
  hurwitz->add_option("--genus", o.genus)->required();
  hurwitz->add_option("--alpha", o.alpha, "comma-separated profile over infinity")->required();
  hurwitz->add_option("--method", o.method)->check(CLI::IsMember({"brute", "fast", "both"}));
  hurwitz->add_flag("--no-cache", o.no_cache);
  add_budget(hurwitz);
  add_format(hurwitz);

  auto* elsv = app.add_subcommand("elsv-verify", "Interpolate Hodge integrals and check ELSV on the grid");
  elsv->add_option("--genus", o.genus)->required();
  elsv->add_option("--n", o.n)->required();
  elsv->add_option("--max-part", o.max_part, "grid bound D; grown automatically when omitted");
  elsv->add_option("--method", o.method)->check(CLI::IsMember({"brute", "fast", "both"}));
  elsv->add_flag("--no-cache", o.no_cache);
  add_budget(elsv);
  add_format(elsv);

  auto* graphs = app.add_subcommand("graphs", "Top strata of Mbar_{g,n} and their move connectivity");
  graphs->add_option("action", o.action)->required()->check(CLI::IsMember({"enumerate", "connectivity"}));
  graphs->add_option("--genus", o.genus)->required();
  graphs->add_option("--n", o.n)->required();
  add_format(graphs);

  auto* degenerate = app.add_subcommand("degenerate", "Top-strata histogram of the chain degeneration");
  degenerate->add_option("--genus", o.genus)->required();
  degenerate->add_option("--alpha", o.alpha)->required();
  add_budget(degenerate);
  add_format(degenerate);

  std::string command = "taut";
  std::string text;
  int code = 0;
  CacheState cache;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    if (!o.no_cache && (sub == hurwitz || sub == elsv)) {
      cache.cache = std::make_unique<HodgeCache>(HodgeCache::default_directory());
      cache.report = Json{{"enabled", true}, {"file", cache.cache->file().string()}};
    }
    Outcome outcome;
    if (sub == hurwitz) outcome = cmd_hurwitz(o, cache);
    else if (sub == elsv) outcome = cmd_elsv_verify(o, cache);
    else if (sub == graphs) outcome = cmd_graphs(o);
    else outcome = cmd_degenerate(o);
    text = render(outcome, o.format);
    code = outcome.exit_code;
  } catch (const CLI::CallForHelp&) {
    text = (app.get_subcommands().empty() ? &app : app.get_subcommands().front())->help();
  } catch (const CLI::CallForVersion&) {
    text = std::string(kVersion) + "\n";
  } catch (const CLI::Success&) {
    text = app.help();
  } catch (const CLI::ParseError& e) {
    code = static_cast<int>(ErrorKind::invalid_domain);
    text = error_text(ErrorKind::invalid_domain, e.what());
  } catch (const RankDeficient& e) {
    code = static_cast<int>(e.kind());
    text = error_text(e.kind(), e.what(),
                      Json{{"rank", e.rank()}, {"unknowns", e.unknowns()},
                           {"advice", "raise --max-part (or omit it to grow the grid automatically)"}});
  } catch (const BudgetExceeded& e) {
    code = static_cast<int>(e.kind());
    text = error_text(e.kind(), e.what(), Json{{"advice", "raise --budget or use --method fast"}});
  } catch (const Error& e) {
    code = static_cast<int>(e.kind());
    text = error_text(e.kind(), e.what());
  } catch (const std::exception& e) {
    code = static_cast<int>(ErrorKind::internal);
    text = error_text(ErrorKind::internal, e.what());
  }
  out << text << std::flush;

  Json parameters{{"args", args}};
  if (command != "taut") {
    parameters["genus"] = o.genus;
    if (command == "elsv-verify" || command == "graphs") parameters["n"] = o.n;
    if (command == "hurwitz" || command == "degenerate") parameters["alpha"] = o.alpha;
    if (command == "elsv-verify") parameters["max_part"] = o.max_part ? Json(*o.max_part) : Json(nullptr);
    if (command == "hurwitz" || command == "elsv-verify") {
      parameters["method"] = o.method;
      parameters["no_cache"] = o.no_cache;
    }
    if (command == "graphs") parameters["action"] = o.action;
    parameters["format"] = o.format;
  }
  if (cache.cache) {
    cache.report["hits"] = cache.hits;
    cache.report["stored"] = cache.stored;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json manifest{{"command", command},
                {"parameters", std::move(parameters)},
                {"version", kVersion},
                {"wall_time_seconds", seconds},
                {"budget", {{"search_space", o.budget}, {"threads", o.threads}}},
                {"cache", cache.report},
                {"exit_code", code},
                {"output_digest", "fnv1a64:" + fnv1a(text)}};
  err << Json{{"manifest", std::move(manifest)}}.dump() << std::endl;
  return code;
}

}  // namespace taut
