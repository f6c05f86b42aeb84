#include "oddminor/serialize.hpp"

#include <cmath>
#include <fstream>

#include "oddminor/codec.hpp"
#include "oddminor/errors.hpp"

namespace oddminor {

std::string artifact_version() { return ODDMINOR_VERSION; }

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'", 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw MalformedInput(std::string("field '") + key + "' has the wrong type", 0);
  }
}

Graph graph_field(const Json& j, const char* key) {
  try {
    return decode_graph6(field<std::string>(j, key));
  } catch (const MalformedInput& e) {
    throw MalformedInput(std::string("layer '") + key + "': " + e.what(), 0);
  }
}

void check_schema(const Json& j, const char* kind) {
  if (field<std::string>(j, "schema") != kSchema) throw MalformedInput("unsupported schema", 0);
  if (field<std::string>(j, "kind") != kind) throw MalformedInput(std::string("expected a ") + kind + " document", 0);
}

const char* direction_name(BoundDirection d) { return d == BoundDirection::at_most ? "at_most" : "at_least"; }

}  // namespace

const char* to_string(SearchStatus status) { return status == SearchStatus::exact ? "exact" : "lower-bound"; }

Json to_json(const ConstructionParams& p) {
  return Json{{"n", p.n}, {"m", p.m}, {"p", p.p}, {"seed", p.seed}, {"use_paper_defaults", p.use_paper_defaults}};
}

Json to_json(const ConstructionTrace& t) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "trace";
  j["params"] = to_json(t.params);
  j["layers"] = Json{{"hstar_r", encode_graph6(t.hstar_r)}, {"hstar_b", encode_graph6(t.hstar_b)},
                     {"h_r", encode_graph6(t.h_r)},         {"h_b", encode_graph6(t.h_b)},
                     {"hprime_r", encode_graph6(t.hprime_r)}, {"hprime_b", encode_graph6(t.hprime_b)},
                     {"h0_red", encode_graph6(t.h0.red)},   {"h0_blue", encode_graph6(t.h0.blue)},
                     {"h", encode_graph6(t.h)},             {"g", encode_graph6(t.g)}};
  j["pi_r"] = t.pi_r;
  j["pi_b"] = t.pi_b;
  return j;
}

ConstructionTrace trace_from_json(const Json& j) {
  check_schema(j, "trace");
  ConstructionTrace t;
  const Json params = field<Json>(j, "params");
  t.params.n = field<std::uint64_t>(params, "n");
  t.params.m = field<std::uint64_t>(params, "m");
  t.params.p = field<double>(params, "p");
  t.params.seed = field<std::uint64_t>(params, "seed");
  t.params.use_paper_defaults = field<bool>(params, "use_paper_defaults");
  const Json layers = field<Json>(j, "layers");
  t.hstar_r = graph_field(layers, "hstar_r");
  t.hstar_b = graph_field(layers, "hstar_b");
  t.h_r = graph_field(layers, "h_r");
  t.h_b = graph_field(layers, "h_b");
  t.hprime_r = graph_field(layers, "hprime_r");
  t.hprime_b = graph_field(layers, "hprime_b");
  t.h0.red = graph_field(layers, "h0_red");
  t.h0.blue = graph_field(layers, "h0_blue");
  t.h = graph_field(layers, "h");
  t.g = graph_field(layers, "g");
  t.pi_r = field<VertexMap>(j, "pi_r");
  t.pi_b = field<VertexMap>(j, "pi_b");
  return t;
}

Json to_json(const Pairing& pairing) {
  Json j = Json::array();
  for (const auto& [u, v] : pairing.pairs) j.push_back(Json::array({u, v}));
  return j;
}

Pairing pairing_from_json(const Json& j) {
  if (!j.is_array()) throw MalformedInput("a pairing is a JSON array of [u, v] pairs", 0);
  Pairing p;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw MalformedInput("pairing entries must be [u, v] with non-negative integers", 0);
    p.pairs.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  return p;
}

Json to_json(const MinorModel& model) {
  Json trees = Json::array();
  for (const auto& t : model.trees) {
    Json edges = Json::array();
    for (const Edge& e : t.edges) edges.push_back(Json::array({e.u, e.v}));
    Json colors = Json::array();
    for (Color c : t.colors) colors.push_back(c == Color::white ? "white" : "black");
    trees.push_back(Json{{"vertices", t.vertices}, {"edges", edges}, {"colors", colors}});
  }
  return Json{{"schema", kSchema}, {"kind", "model"}, {"t", model.size()}, {"trees", trees}};
}

MinorModel model_from_json(const Json& j) {
  const Json trees = j.is_array() ? j : field<Json>(j, "trees");
  if (!trees.is_array()) throw MalformedInput("'trees' must be an array", 0);
  MinorModel m;
  for (const auto& tj : trees) {
    MinorTree t;
    t.vertices = field<std::vector<Vertex>>(tj, "vertices");
    for (const auto& e : field<Json>(tj, "edges")) {
      if (!e.is_array() || e.size() != 2) throw MalformedInput("tree edges must be [u, v]", 0);
      t.edges.push_back(Edge{e[0].get<Vertex>(), e[1].get<Vertex>()});
    }
    for (const auto& c : field<std::vector<std::string>>(tj, "colors")) {
      if (c == "white")
        t.colors.push_back(Color::white);
      else if (c == "black")
        t.colors.push_back(Color::black);
      else
        throw MalformedInput("colour must be 'white' or 'black', got '" + c + "'", 0);
    }
    m.trees.push_back(std::move(t));
  }
  return m;
}

Json to_json(const BoundCheck& c) {
  Json bound = std::isfinite(c.bound) ? Json(c.bound) : Json(nullptr);
  return Json{{"observed", c.observed}, {"bound", bound}, {"direction", direction_name(c.direction)}, {"holds", c.holds}};
}

Json to_json(const EventReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "event-report";
  j["eps"] = r.eps;
  j["gamma"] = r.gamma;
  j["events"] = Json{{"d_r", to_json(r.d_r)}, {"d_b", to_json(r.d_b)}, {"f_r", to_json(r.f_r)},
                     {"f_b", to_json(r.f_b)}, {"t_r", to_json(r.t_r)}, {"t_b", to_json(r.t_b)}};
  j["cherries"] = Json{{"red_asymptotic", to_json(r.cherries_r_asymptotic)},
                       {"blue_asymptotic", to_json(r.cherries_b_asymptotic)},
                       {"red_proof_step", to_json(r.cherries_r_proof_step)},
                       {"blue_proof_step", to_json(r.cherries_b_proof_step)}};
  if (r.pairing) {
    const PairingAudit& a = *r.pairing;
    j["pairing"] = Json{{"s", a.s},
                        {"respectful_r", a.respectful_r},
                        {"respectful_b", a.respectful_b},
                        {"pi_edges", to_json(a.pi_edges)},
                        {"gamma_edges", to_json(a.gamma_edges)},
                        {"gamma_max_degree", to_json(a.gamma_max_degree)},
                        {"fiber_product_violations", to_json(a.fiber_product_violations)},
                        {"max_fiber_product", a.max_fiber_product}};
  } else {
    j["pairing"] = nullptr;
  }
  return j;
}

Json to_json(const TraceVerification& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  const InvariantCheck* f = v.first_failure();
  return Json{{"schema", kSchema},
              {"kind", "verification"},
              {"ok", v.ok()},
              {"first_failure", f ? Json(f->name) : Json(nullptr)},
              {"checks", checks}};
}

Json to_json(const FrequencyEstimate& e) {
  Json j{{"successes", e.successes}, {"trials", e.trials}, {"estimate", e.estimate},
         {"interval", Json::array({e.lower, e.upper})}};
  if (e.bound) {
    j["bound"] = std::isfinite(*e.bound) ? Json(*e.bound) : Json(nullptr);
    j["bound_kind"] = e.bound_kind == BoundKind::frequency_at_most ? "frequency_at_most" : "frequency_at_least";
  } else {
    j["bound"] = nullptr;
  }
  return j;
}

Json to_json(const SweepRecord& r) {
  return Json{{"graph6", r.graph6},
              {"n", r.n},
              {"chi", r.prop.chi},
              {"t_star", r.prop.t_star},
              {"prop_bound", r.prop.bound},
              {"prop_verdict", r.prop.verdict},
              {"literal_t", r.prop.literal_t},
              {"literal_bound", r.prop.literal_bound},
              {"literal_verdict", r.prop.literal_verdict},
              {"ks_required", r.ks.required},
              {"ks_verdict", r.ks.verdict}};
}

Json to_json(const CertificateReport& r) {
  return Json{{"verdict", r.verdict}, {"failure", r.verdict ? Json(nullptr) : Json(r.failure)}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

void append_jsonl(const std::string& path, const Json& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open results file " + path);
  out << record.dump() << '\n';
}

}  // namespace oddminor
