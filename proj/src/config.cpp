#include "oddminor/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "oddminor/errors.hpp"

namespace oddminor {

const Preset& RunConfig::preset(const std::string& name) const {
  auto it = presets.find(name);
  if (it == presets.end()) throw PreconditionFailed("unknown preset '" + name + "'");
  return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_positive(std::string_view v, std::size_t line) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) throw MalformedInput("expected an integer, got '" + std::string(v) + "'", line);
  if (x == 0) throw MalformedInput("limits must be positive", line);
  return x;
}

double parse_real(std::string_view v, std::size_t line) {
  std::istringstream is{std::string(v)};
  double x = 0;
  if (!(is >> x) || !is.eof()) throw MalformedInput("expected a number, got '" + std::string(v) + "'", line);
  return x;
}

Preset parse_preset(std::string_view v, std::size_t line) {
  Preset p;
  const std::size_t a = v.find(',');
  const std::size_t b = a == std::string_view::npos ? a : v.find(',', a + 1);
  if (b == std::string_view::npos) throw MalformedInput("a preset reads 'n,m,p'", line);
  p.n = parse_positive(trim(v.substr(0, a)), line);
  p.m = parse_positive(trim(v.substr(a + 1, b - a - 1)), line);
  p.p = parse_real(trim(v.substr(b + 1)), line);
  if (!(p.p >= 0.0 && p.p <= 1.0)) throw MalformedInput("preset probability outside [0, 1]", line);
  return p;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw MalformedInput("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "chromatic_limit") {
      cfg.chromatic_limit = parse_positive(value, line_no);
      if (cfg.chromatic_limit > kDefaultChromaticLimit)
        throw MalformedInput("chromatic_limit cannot exceed " + std::to_string(kDefaultChromaticLimit), line_no);
    } else if (key == "minor_exact_limit") {
      cfg.minor_exact_limit = parse_positive(value, line_no);
      if (cfg.minor_exact_limit > kMinorHardLimit)
        throw MalformedInput("minor_exact_limit cannot exceed " + std::to_string(kMinorHardLimit), line_no);
    } else if (key == "pairing_budget") {
      cfg.pairing_budget = parse_positive(value, line_no);
    } else if (key == "minor_budget") {
      cfg.minor_budget = parse_positive(value, line_no);
    } else if (key == "results_path") {
      if (value.empty()) throw MalformedInput("results_path is empty", line_no);
      cfg.results_path = std::string(value);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<unsigned>(parse_positive(value, line_no));
    } else if (key.substr(0, 7) == "preset." && key.size() > 7) {
      cfg.presets[std::string(key.substr(7))] = parse_preset(value, line_no);
    } else {
      throw MalformedInput("unknown key '" + std::string(key) + "'", line_no);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

}  // namespace oddminor
