#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdist/parallel.hpp"

namespace pdist {

struct SuiteConfig {
  std::string scenario;
  std::uint64_t seed = 1;
  int instances = 0;  // 0 = scenario default
  int n = 7;
  std::string property = "edgeless";
  double alpha = 0.3;
  double eps = 0.1;
  Exec exec = Exec::parallel;
};

struct ExperimentRecord {
  std::string id;
  std::uint64_t seed = 0;
  nlohmann::json params;
  std::string verdict;
  double oracle_dist = -1.0;
  std::uint64_t queries_edge = 0;
  std::uint64_t queries_vertex = 0;
  double wall_ms = 0.0;
};

/// oracle-check (three fixed fixtures; `instances` is ignored), rounding-stats,
/// estimate-vs-oracle.
std::vector<std::string> scenario_names();

/// One record per instance, ordered by instance id. Throws DomainError on an
/// unknown scenario or bad config.
std::vector<ExperimentRecord> run_suite(const SuiteConfig& config);

nlohmann::json records_to_json(const std::vector<ExperimentRecord>& records);
/// Header row, then one row per record; params are flattened to params.<key>.
std::string records_to_csv(const std::vector<ExperimentRecord>& records);

}  // namespace pdist
