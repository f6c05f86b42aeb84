#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "oddminor/appendix.hpp"
#include "oddminor/audit.hpp"
#include "oddminor/codec.hpp"
#include "oddminor/config.hpp"
#include "oddminor/errors.hpp"
#include "oddminor/montecarlo.hpp"
#include "oddminor/serialize.hpp"

using namespace oddminor;

namespace {

enum class Format { automatic, graph6, dimacs };

/// Thrown for bad flag combinations found after parsing; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Format format_for(const std::string& path, Format requested, const std::string& text = {}) {
  if (requested != Format::automatic) return requested;
  if (ends_with(path, ".g6")) return Format::graph6;
  if (ends_with(path, ".dimacs") || ends_with(path, ".col") || ends_with(path, ".dim")) return Format::dimacs;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == 'p' || text[first] == 'c') &&
      (first + 1 >= text.size() || text[first + 1] == ' '))
    return Format::dimacs;
  return Format::graph6;
}

Graph read_graph(const std::string& path, Format format) {
  const std::string text = read_input(path);
  if (format_for(path, format, text) == Format::dimacs) {
    const DimacsGraph d = decode_dimacs(text);
    if (d.duplicate_edges > 0) std::cerr << "warning: " << d.duplicate_edges << " duplicate edge lines collapsed\n";
    return d.graph;
  }
  return decode_graph6(text);
}

std::string encode_graph(const Graph& g, Format format) {
  return format == Format::dimacs ? encode_dimacs(g) : encode_graph6(g) + "\n";
}

void add_format_option(CLI::App* cmd, Format& target, const std::string& name = "--format") {
  static const std::map<std::string, Format> names{
      {"auto", Format::automatic}, {"g6", Format::graph6}, {"graph6", Format::graph6}, {"dimacs", Format::dimacs}};
  cmd->add_option(name, target, "graph format: auto, g6 or dimacs")->transform(CLI::CheckedTransformer(names));
}

Fraction parse_fraction(const std::string& s) {
  const std::size_t slash = s.find('/');
  try {
    if (slash != std::string::npos) return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    const std::size_t dot = s.find('.');
    if (dot == std::string::npos) return {std::stoll(s), 1};
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return {std::stoll(s.substr(0, dot) + s.substr(dot + 1)), den};
  } catch (const std::exception&) {
    throw UsageError("eta must be a fraction like 1/6 or a decimal, got '" + s + "'");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd connected pairings, odd minors and the random counterexample construction"};
  app.require_subcommand(1);
  std::string config_path;
  unsigned jobs_flag = 0;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--jobs", jobs_flag, "worker threads (0: one per hardware thread)");

  RunConfig config;
  auto jobs = [&] { return jobs_flag != 0 ? jobs_flag : config.jobs; };

  // generate
  auto* generate = app.add_subcommand("generate", "build a construction trace");
  std::uint64_t gen_n = 0, gen_m = 0, seed = 0;
  double gen_p = -1.0;
  std::string preset, out_path;
  bool paper_defaults = false;
  generate->add_option("--n", gen_n, "number of vertices");
  generate->add_option("--m", gen_m, "base graph order");
  generate->add_option("--p", gen_p, "edge probability of the base graphs");
  generate->add_option("--preset", preset, "named parameter set from the configuration");
  generate->add_flag("--paper-defaults", paper_defaults, "derive m and p from n by the asymptotic formulas");
  generate->add_option("--seed", seed, "master seed");
  generate->add_option("--out", out_path, "output file (default: standard output)");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check every invariant of a trace");
  std::string in_path;
  verify->add_option("--in", in_path, "trace JSON")->required();

  // audit
  auto* audit = app.add_subcommand("audit", "evaluate the events and pairing quantities on a trace");
  std::string pairing_path;
  double eps = 0.1, gamma = 0.01;
  audit->add_option("--in", in_path, "trace JSON")->required();
  audit->add_option("--pairing", pairing_path, "pairing JSON ([[u, v], ...])");
  audit->add_option("--eps", eps, "respectfulness parameter");
  audit->add_option("--gamma", gamma, "density parameter for the pi-graph");

  // search-pairing
  auto* search_pairing = app.add_subcommand("search-pairing", "maximum odd connected pairing");
  Format format = Format::automatic;
  bool as_json = false;
  std::optional<std::uint64_t> budget;
  search_pairing->add_option("--in", in_path, "graph file, '-' for standard input")->required();
  add_format_option(search_pairing, format);
  search_pairing->add_option("--budget", budget, "branch-node budget");
  search_pairing->add_flag("--json", as_json, "print the witness and status as JSON");

  // search-odd-minor
  auto* search_minor = app.add_subcommand("search-odd-minor", "largest complete odd minor");
  search_minor->add_option("--in", in_path, "graph file, '-' for standard input")->required();
  add_format_option(search_minor, format);
  search_minor->add_option("--budget", budget, "branch-node budget");
  search_minor->add_flag("--json", as_json, "print the witness and status as JSON");

  // certify
  auto* certify = app.add_subcommand("certify", "check an odd-minor model against a graph");
  std::string model_path, eta_text;
  bool to_pairing = false;
  certify->add_option("--in", in_path, "graph file")->required();
  add_format_option(certify, format);
  certify->add_option("--model", model_path, "model JSON")->required();
  certify->add_flag("--to-pairing", to_pairing, "also turn the model into an odd connected pairing");
  certify->add_option("--eta", eta_text, "rational eta in (0, 1) for --to-pairing, e.g. 1/6");

  // probe
  auto* probe = app.add_subcommand("probe", "Monte Carlo frequency estimate for a named target");
  std::string target, results_path;
  std::uint64_t trials = 1000;
  std::map<std::string, double> params;
  probe->add_option("target", target, "always-true, fair-coin, chernoff, respectful or matching-cycle")->required();
  probe->add_option("--trials", trials, "number of trials");
  probe->add_option("--seed", seed, "master seed");
  probe->add_option("--results", results_path, "append the record to this JSON-lines file");
  for (const char* key : {"N", "p", "t", "n", "m", "eps", "length", "q"})
    probe->add_option_function<double>(std::string("--") + key, [&params, key](double v) { params[key] = v; },
                                       std::string("target parameter ") + key);

  // sweep-appendix
  auto* sweep = app.add_subcommand("sweep-appendix", "check both appendix bounds on every graph with alpha <= 2");
  std::size_t n_min = 1, n_max = 6;
  sweep->add_option("--n-min", n_min, "smallest order");
  sweep->add_option("--n-max", n_max, "largest order (at most 8)");
  sweep->add_option("--out", out_path, "JSON-lines output (default: standard output)");

  // convert
  auto* convert = app.add_subcommand("convert", "transcode between graph6 and DIMACS");
  Format to_format = Format::automatic;
  convert->add_option("--in", in_path, "input graph")->required();
  convert->add_option("--out", out_path, "output graph (default: standard output)");
  add_format_option(convert, format, "--from");
  add_format_option(convert, to_format, "--to");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) config = load_config(config_path);

    if (generate->parsed()) {
      ConstructionParams params;
      const bool explicit_mp = gen_m != 0 || gen_p >= 0.0;
      if (!preset.empty()) {
        if (gen_n || explicit_mp || paper_defaults) throw UsageError("--preset excludes --n, --m, --p and --paper-defaults");
        const Preset& ps = config.preset(preset);
        params = {ps.n, ps.m, ps.p, seed, false};
      } else if (paper_defaults) {
        if (!gen_n || explicit_mp) throw UsageError("--paper-defaults takes --n only");
        params = default_params(gen_n, seed);
      } else {
        if (!gen_n || !gen_m || gen_p < 0.0) throw UsageError("give --n, --m and --p, --preset, or --paper-defaults --n");
        params = {gen_n, gen_m, gen_p, seed, false};
      }
      write_output(out_path, dump(to_json(build_counterexample(params))));
      return 0;
    }
    if (verify->parsed()) {
      const TraceVerification v = verify_trace(trace_from_json(parse_json(read_input(in_path))));
      std::cout << dump(to_json(v));
      if (!v.ok()) {
        for (const auto& c : v.checks)
          if (!c.passed) std::cerr << "failed invariant: " << c.name << ": " << c.detail << "\n";
        return 1;
      }
      return 0;
    }
    if (audit->parsed()) {
      const ConstructionTrace trace = trace_from_json(parse_json(read_input(in_path)));
      std::optional<Pairing> pairing;
      if (!pairing_path.empty()) pairing = pairing_from_json(parse_json(read_input(pairing_path)));
      std::cout << dump(to_json(audit_instance(trace, eps, gamma, pairing ? &*pairing : nullptr)));
      return 0;
    }
    if (search_pairing->parsed()) {
      const Graph g = read_graph(in_path, format);
      const PairingSearchResult r = max_odd_connected_pairing(g, budget.value_or(config.pairing_budget));
      if (as_json)
        std::cout << dump(Json{{"schema", kSchema},
                               {"kind", "pairing-search"},
                               {"size", r.size},
                               {"status", to_string(r.status)},
                               {"nodes", r.nodes},
                               {"witness", to_json(r.witness)}});
      else
        std::cout << r.size << "\n";
      return 0;
    }
    if (search_minor->parsed()) {
      const Graph g = read_graph(in_path, format);
      MinorSearchOptions opts = config.minor_options();
      if (budget) opts.budget = *budget;
      const MinorSearchResult r = max_odd_clique_minor(g, opts);
      if (as_json) {
        Json j = to_json(r.witness);
        j["t"] = r.t;
        j["status"] = to_string(r.status);
        j["nodes"] = r.nodes;
        std::cout << dump(j);
      } else {
        std::cout << r.t << "\n";
      }
      return 0;
    }
    if (certify->parsed()) {
      if (to_pairing && eta_text.empty()) throw UsageError("--to-pairing needs --eta");
      const Graph g = read_graph(in_path, format);
      const MinorModel model = model_from_json(parse_json(read_input(model_path)));
      const CertificateReport report = verify_model(g, model);
      Json j = to_json(report);
      if (to_pairing && report.verdict) j["pairing"] = to_json(model_to_pairing(g, model, parse_fraction(eta_text)));
      std::cout << dump(j);
      return report.verdict ? 0 : 1;
    }
    if (probe->parsed()) {
      const TrialPlan plan{trials, seed, target, params, jobs()};
      const FrequencyEstimate e = run_trials(plan);
      Json record{{"schema", kSchema},      {"kind", "probe"},     {"version", artifact_version()},
                  {"target", target},       {"params", params},    {"trials", trials},
                  {"seed", seed},           {"estimate", to_json(e)}};
      std::cout << dump(record);
      const std::string sink = results_path.empty() ? config.results_path : results_path;
      if (!sink.empty()) append_jsonl(sink, record);
      return 0;
    }
    if (sweep->parsed()) {
      if (n_min > n_max) throw UsageError("--n-min exceeds --n-max");
      std::ofstream file;
      if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw Error("cannot write " + out_path);
      }
      std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
      AppendixLimits limits;
      limits.chromatic_limit = config.chromatic_limit;
      limits.minor = config.minor_options();
      limits.minor.require_exact = true;
      const SweepSummary s =
          sweep_appendix(n_min, n_max, jobs(), [&](const SweepRecord& r) { out << to_json(r).dump() << "\n"; }, limits);
      std::cerr << Json{{"graphs", s.graphs},
                        {"prop_violations", s.prop_violations},
                        {"ks_violations", s.ks_violations},
                        {"max_ratio", s.max_ratio},
                        {"max_ratio_graph6", s.max_ratio_graph6}}
                       .dump()
                << "\n";
      return s.prop_violations == 0 && s.ks_violations == 0 ? 0 : 1;
    }
    if (convert->parsed()) {
      const Graph g = read_graph(in_path, format);
      Format target_format = format_for(out_path, to_format);
      if (to_format == Format::automatic && out_path.empty()) throw UsageError("give --to when writing to standard output");
      write_output(out_path, encode_graph(g, target_format));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
