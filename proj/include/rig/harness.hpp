#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rig/graph.hpp"
#include "rig/graph_stats.hpp"
#include "rig/size_dist.hpp"

namespace rig {

enum class Model { active, passive };

std::string to_string(Model model);

/// A malformed experiment configuration. field() names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument("config field '" + field + "': " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A failure inside one replicate, tagged with its index.
class ReplicateError : public std::runtime_error {
 public:
  ReplicateError(std::uint32_t replicate, const std::string& message)
      : std::runtime_error("replicate " + std::to_string(replicate) + ": " + message),
        replicate_(replicate) {}
  std::uint32_t replicate() const noexcept { return replicate_; }

 private:
  std::uint32_t replicate_;
};

struct ExperimentConfig {
  Model model = Model::active;
  std::uint32_t n = 1;
  std::uint32_t m = 1;
  std::uint32_t s = 1;  // active only
  SizeDistribution size_dist;
  std::uint32_t replicates = 1;
  std::uint64_t base_seed = 0;
  std::uint32_t k_min = 1;
  std::uint32_t k_max = 30;
  std::string report_json;
  std::string report_csv;
  std::string edge_list_dir;
  /// Absolute tolerances keyed by statistic name; used only to flag rows.
  std::map<std::string, double> tolerances;
  bool record_timing = false;

  /// Replicate i uses base_seed + i.
  std::uint64_t seed_for(std::uint32_t replicate) const { return base_seed + replicate; }

  /// Throws ConfigError naming the first bad field.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Generates the graph for one replicate.
Graph generate_replicate(const ExperimentConfig& config, std::uint32_t replicate);

/// Theory values for the configured model, in the prediction JSON schema.
nlohmann::json prediction_for(const ExperimentConfig& config);

/// One row of the report: a statistic (optionally at degree k) summarized
/// across replicates and set against its prediction.
struct StatSummary {
  std::string statistic;
  std::optional<std::uint32_t> k;
  std::uint32_t defined_replicates = 0;
  std::uint64_t pair_count = 0;  // pooled ordered pairs (per-k rows) or vertices (degree_pmf)
  std::optional<double> empirical_mean;
  std::optional<double> standard_error;
  std::optional<double> prediction;
  std::optional<double> zscore;
  std::optional<bool> within_tolerance;
};

struct ExperimentReport {
  ExperimentConfig config;
  nlohmann::json prediction;
  std::vector<StatSummary> rows;
  std::map<std::uint32_t, std::uint64_t> pooled_histogram;
  std::uint64_t pooled_vertices = 0;
  double wall_seconds = 0.0;

  const StatSummary* find(const std::string& statistic,
                          std::optional<std::uint32_t> k = std::nullopt) const;
};

/// Worker count: RIG_WORKERS when set, else hardware concurrency.
unsigned default_workers();

/// Runs every replicate (concurrently on `workers` threads), computes their
/// statistics and aggregates in replicate order. The result does not depend
/// on the worker count.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                std::optional<unsigned> workers = std::nullopt);

/// Aggregates per-replicate statistics; exposed for testing.
ExperimentReport summarize(const ExperimentConfig& config, const std::vector<EmpiricalStats>& stats,
                           nlohmann::json prediction);

nlohmann::json to_json(const ExperimentReport& report);

/// Columns: statistic,k,empirical_mean,se,prediction,zscore.
std::string to_csv(const ExperimentReport& report);

}  // namespace rig
