#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "oddminor/construction.hpp"
#include "oddminor/odd_minor.hpp"
#include "oddminor/pairing.hpp"

namespace oddminor {

struct Preset {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double p = 0.0;
  bool operator==(const Preset&) const = default;
};

/// Key = value settings. Recognised keys: chromatic_limit, minor_exact_limit,
/// pairing_budget, minor_budget, results_path, jobs, preset.<name>
/// (value "n,m,p"). Blank lines and lines starting with '#' are skipped.
struct RunConfig {
  std::size_t chromatic_limit = kDefaultChromaticLimit;
  std::size_t minor_exact_limit = kMinorExactLimit;
  std::uint64_t pairing_budget = kDefaultPairingBudget;
  std::uint64_t minor_budget = kDefaultMinorBudget;
  std::string results_path;
  /// 0 means one worker per hardware thread.
  unsigned jobs = 0;
  std::map<std::string, Preset> presets{
      {"small", {512, 64, 0.05}}, {"medium", {4096, 256, 0.02}}, {"large", {51200, 1024, 0.01}}};

  MinorSearchOptions minor_options() const { return {minor_budget, minor_exact_limit, false}; }
  /// Throws PreconditionFailed for an unknown name.
  const Preset& preset(const std::string& name) const;
};

/// Throws MalformedInput (offset = line number) on an unknown key, a bad
/// value or a non-positive limit.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace oddminor
