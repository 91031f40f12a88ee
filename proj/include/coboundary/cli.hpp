#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coboundary/report.hpp"

namespace coboundary {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct CheckConfig {
  std::string check;
  std::size_t n = 2;
  std::size_t max_degree = 6;
  std::uint64_t seed = 7;
  std::size_t samples = 10;
  /// Catalog name or path to a structure-tensor JSON file.
  std::string algebra = "Sweedler";
  /// "epsilon" (eps * antidiagonal) or "identity".
  std::string g0 = "epsilon";
  bool negative_control = true;
  bool timing = false;

  /// Short "name n=2 ..." text, also the aggregation sort key.
  std::string key() const;
};

struct RegistryEntry {
  std::string name;
  std::string summary;
  std::function<CheckReport(const CheckConfig&)> run;
  /// Whether `all` includes this check for the given n.
  std::function<bool(std::size_t)> in_suite;
};

const std::vector<RegistryEntry>& registry();
std::string registry_listing();

/// Runs one check; throws UsageError on unknown names or bad parameters.
CheckReport run_check(const CheckConfig& config);

/// Expands "all" or "a,b:n=3,c:g0=identity" against shared parameters.
std::vector<CheckConfig> expand_suite(const std::string& spec, const CheckConfig& shared);

struct SuiteResult {
  Json document;
  std::string summary;
  /// 0 all pass, 1 otherwise.
  int exit_code = 0;
};

/// Builds the aggregate document; configs and reports in matching order.
SuiteResult aggregate(const std::vector<CheckConfig>& configs, const std::vector<CheckReport>& reports,
                      const Json& meta = Json::object());

/// Runs the checks concurrently and aggregates them in key order. Usage errors
/// inside a suite are reported as failed entries.
SuiteResult run_suite(const std::vector<CheckConfig>& configs, const Json& meta = Json::object());

}  // namespace coboundary
