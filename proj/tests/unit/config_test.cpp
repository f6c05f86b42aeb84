#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oddminor/config.hpp"
#include "oddminor/errors.hpp"

using namespace oddminor;

namespace {

std::size_t line_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const MalformedInput& e) {
    return e.offset();
  }
  FAIL("expected MalformedInput");
  return 0;
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.chromatic_limit == kDefaultChromaticLimit);
  CHECK(c.minor_exact_limit == kMinorExactLimit);
  CHECK(c.pairing_budget == kDefaultPairingBudget);
  CHECK(c.jobs == 0);
  CHECK(c.preset("small") == Preset{512, 64, 0.05});
  CHECK(c.preset("medium") == Preset{4096, 256, 0.02});
  CHECK(c.preset("large") == Preset{51200, 1024, 0.01});
  CHECK_THROWS_AS(c.preset("huge"), PreconditionFailed);
}

TEST_CASE("recognised keys") {
  const RunConfig c = parse_config(
      "# budgets\n"
      "chromatic_limit = 20\n"
      "\n"
      "minor_exact_limit=10\n"
      "pairing_budget = 1000\r\n"
      "minor_budget = 77\n"
      "results_path = out/results.jsonl\n"
      "jobs = 3\n"
      "preset.tiny = 30, 5, 0.1\n");
  CHECK(c.chromatic_limit == 20);
  CHECK(c.minor_exact_limit == 10);
  CHECK(c.pairing_budget == 1000);
  CHECK(c.minor_budget == 77);
  CHECK(c.results_path == "out/results.jsonl");
  CHECK(c.jobs == 3);
  CHECK(c.preset("tiny") == Preset{30, 5, 0.1});
  CHECK(c.preset("small") == Preset{512, 64, 0.05});
  const MinorSearchOptions o = c.minor_options();
  CHECK(o.budget == 77);
  CHECK(o.exact_limit == 10);
}

TEST_CASE("rejections carry the line number") {
  CHECK(line_of("jobs = 2\nunknown_key = 4\n") == 2);
  CHECK(line_of("\n\npairing_budget = 0\n") == 3);
  CHECK(line_of("pairing_budget = -5\n") == 1);
  CHECK(line_of("minor_budget = 12abc\n") == 1);
  CHECK(line_of("chromatic_limit = 65\n") == 1);
  CHECK(line_of("minor_exact_limit = 15\n") == 1);
  CHECK(line_of("just text\n") == 1);
  CHECK(line_of("preset.x = 1,2\n") == 1);
  CHECK(line_of("preset.x = 1,2,1.5\n") == 1);
  CHECK(line_of("preset.x = 0,2,0.5\n") == 1);
  CHECK(line_of("jobs = 0\n") == 1);
}

TEST_CASE("load_config reads a file") {
  const std::string path = "config_test.conf";
  {
    std::ofstream out(path);
    out << "jobs = 2\n";
  }
  CHECK(load_config(path).jobs == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("/nonexistent/oddminor.conf"), Error);
}
