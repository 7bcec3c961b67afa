#include "rig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "rig/active_graph.hpp"
#include "rig/passive_graph.hpp"
#include "rig/theory_active.hpp"
#include "rig/theory_passive.hpp"
#include "rig/version.hpp"

namespace rig {

std::string to_string(Model model) { return model == Model::active ? "active" : "passive"; }

namespace {

template <class T>
T unsigned_field(const nlohmann::json& j, const std::string& name, std::uint64_t lo,
                 std::uint64_t hi) {
  if (!j.contains(name)) throw ConfigError(name, "missing");
  const auto& f = j[name];
  if (!f.is_number_integer() || (f.is_number_integer() && !f.is_number_unsigned() &&
                                 f.get<std::int64_t>() < 0)) {
    throw ConfigError(name, "must be a non-negative integer");
  }
  const auto v = f.get<std::uint64_t>();
  if (v < lo || v > hi) {
    throw ConfigError(name, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<T>(v);
}

std::string string_field(const nlohmann::json& j, const std::string& path, const std::string& name) {
  if (!j.contains(name)) return {};
  if (!j[name].is_string()) throw ConfigError(path + name, "must be a string");
  return j[name].get<std::string>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  static const char* known[] = {"model",    "n",          "m",       "s",          "size_dist",
                                "replicates", "base_seed", "k_range", "outputs",    "tolerances",
                                "record_timing"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError(key, "unknown field");
    }
  }
  ExperimentConfig c;
  if (!j.contains("model") || !j["model"].is_string()) throw ConfigError("model", "missing");
  const auto model = j["model"].get<std::string>();
  if (model == "active") {
    c.model = Model::active;
  } else if (model == "passive") {
    c.model = Model::passive;
  } else {
    throw ConfigError("model", "must be \"active\" or \"passive\"");
  }
  c.n = unsigned_field<std::uint32_t>(j, "n", 1, 0xfffffffeULL);
  c.m = unsigned_field<std::uint32_t>(j, "m", 1, 0xfffffffeULL);
  if (c.model == Model::active) {
    c.s = j.contains("s") ? unsigned_field<std::uint32_t>(j, "s", 1, c.m) : 1;
  } else if (j.contains("s") && unsigned_field<std::uint32_t>(j, "s", 1, c.m) != 1) {
    throw ConfigError("s", "the passive model supports s = 1 only");
  }
  if (!j.contains("size_dist")) throw ConfigError("size_dist", "missing");
  try {
    c.size_dist = SizeDistribution::from_json(j["size_dist"]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("size_dist", e.what());
  }
  if (c.size_dist.max_value() > c.m) throw ConfigError("size_dist", "support exceeds m");
  c.replicates = j.contains("replicates")
                     ? unsigned_field<std::uint32_t>(j, "replicates", 1, 1'000'000)
                     : 1;
  c.base_seed = j.contains("base_seed")
                    ? unsigned_field<std::uint64_t>(j, "base_seed", 0, UINT64_MAX)
                    : 0;
  if (j.contains("k_range")) {
    const auto& kr = j["k_range"];
    if (!kr.is_array() || kr.size() != 2 || !kr[0].is_number_unsigned() ||
        !kr[1].is_number_unsigned() || kr[0].get<std::uint64_t>() > kr[1].get<std::uint64_t>() ||
        kr[1].get<std::uint64_t>() > 100000) {
      throw ConfigError("k_range", "must be [k_min, k_max] with 0 <= k_min <= k_max <= 100000");
    }
    c.k_min = kr[0].get<std::uint32_t>();
    c.k_max = kr[1].get<std::uint32_t>();
  }
  if (j.contains("outputs")) {
    const auto& out = j["outputs"];
    if (!out.is_object()) throw ConfigError("outputs", "must be an object");
    c.report_json = string_field(out, "outputs.", "report_json");
    c.report_csv = string_field(out, "outputs.", "report_csv");
    c.edge_list_dir = string_field(out, "outputs.", "edge_list_dir");
  }
  if (j.contains("tolerances")) {
    const auto& tol = j["tolerances"];
    if (!tol.is_object()) throw ConfigError("tolerances", "must be an object");
    for (const auto& [key, value] : tol.items()) {
      if (!value.is_number() || value.get<double>() < 0) {
        throw ConfigError("tolerances." + key, "must be a non-negative number");
      }
      c.tolerances[key] = value.get<double>();
    }
  }
  if (j.contains("record_timing")) {
    if (!j["record_timing"].is_boolean()) throw ConfigError("record_timing", "must be a boolean");
    c.record_timing = j["record_timing"].get<bool>();
  }
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j = {{"model", to_string(model)},
                      {"n", n},
                      {"m", m},
                      {"size_dist", size_dist.to_json()},
                      {"replicates", replicates},
                      {"base_seed", base_seed},
                      {"k_range", {k_min, k_max}},
                      {"tolerances", tolerances},
                      {"record_timing", record_timing}};
  if (model == Model::active) j["s"] = s;
  nlohmann::json outputs = nlohmann::json::object();
  if (!report_json.empty()) outputs["report_json"] = report_json;
  if (!report_csv.empty()) outputs["report_csv"] = report_csv;
  if (!edge_list_dir.empty()) outputs["edge_list_dir"] = edge_list_dir;
  j["outputs"] = std::move(outputs);
  return j;
}

Graph generate_replicate(const ExperimentConfig& config, std::uint32_t replicate) {
  if (config.model == Model::active) {
    ActiveModelSpec spec{config.n, config.m, config.s, config.size_dist, config.seed_for(replicate)};
    return generate_active(spec);
  }
  PassiveModelSpec spec{config.n, config.m, config.size_dist, config.seed_for(replicate)};
  return generate_passive(spec);
}

nlohmann::json prediction_for(const ExperimentConfig& config) {
  if (config.model == Model::active) {
    ActiveModelSpec spec{config.n, config.m, config.s, config.size_dist, 0};
    const auto limit = ActiveLimitSpec::from_model(spec);
    const auto kmax = std::max<std::size_t>(config.k_max, default_kmax_active(limit));
    return to_json(predict_active(limit, kmax));
  }
  PassiveModelSpec spec{config.n, config.m, config.size_dist, 0};
  const auto model = CompoundPoissonModel::make(spec.size_dist, spec.beta());
  const auto kmax = std::max<std::size_t>(config.k_max, default_kmax_passive(model));
  return to_json(predict_passive(spec, kmax));
}

const StatSummary* ExperimentReport::find(const std::string& statistic,
                                          std::optional<std::uint32_t> k) const {
  for (const auto& row : rows) {
    if (row.statistic == statistic && row.k == k) return &row;
  }
  return nullptr;
}

unsigned default_workers() {
  if (const char* env = std::getenv("RIG_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::optional<double> json_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) return std::nullopt;
  return j[key].get<double>();
}

std::optional<double> per_k_prediction(const nlohmann::json& pred, const char* table,
                                       const char* key, std::uint32_t k) {
  if (!pred.contains(table)) return std::nullopt;
  for (const auto& row : pred[table]) {
    if (row["k"].get<std::uint32_t>() == k) return json_number(row, key);
  }
  return std::nullopt;
}

void finish(StatSummary& row, const std::vector<double>& values,
            const std::map<std::string, double>& tolerances) {
  row.defined_replicates = static_cast<std::uint32_t>(values.size());
  if (values.empty()) return;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  row.empirical_mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    row.standard_error =
        std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
  }
  if (row.prediction && row.standard_error && *row.standard_error > 0.0) {
    row.zscore = (mean - *row.prediction) / *row.standard_error;
  }
  if (!row.k && row.prediction) {
    if (auto it = tolerances.find(row.statistic); it != tolerances.end()) {
      row.within_tolerance = std::abs(mean - *row.prediction) <= it->second;
    }
  }
}

using Extract = std::function<std::optional<double>(const EmpiricalStats&)>;

}  // namespace

ExperimentReport summarize(const ExperimentConfig& config, const std::vector<EmpiricalStats>& stats,
                           nlohmann::json prediction) {
  ExperimentReport report;
  report.config = config;
  report.prediction = std::move(prediction);
  const auto& pred = report.prediction;

  const std::vector<std::pair<std::string, Extract>> scalars = {
      {"r", [](const EmpiricalStats& s) { return s.r; }},
      {"alpha", [](const EmpiricalStats& s) { return s.alpha; }},
      {"b", [](const EmpiricalStats& s) { return s.b; }},
      {"b_prime", [](const EmpiricalStats& s) { return s.b_prime; }},
      {"g", [](const EmpiricalStats& s) { return s.g; }},
      {"h", [](const EmpiricalStats& s) { return s.h; }},
      {"mean_degree", [](const EmpiricalStats& s) { return std::optional(s.mean_degree); }},
      {"edge_density", [](const EmpiricalStats& s) { return std::optional(s.edge_density); }},
  };
  for (const auto& [name, extract] : scalars) {
    StatSummary row;
    row.statistic = name;
    row.prediction = json_number(pred, name.c_str());
    std::vector<double> values;
    for (const auto& s : stats) {
      if (auto v = extract(s)) values.push_back(*v);
    }
    finish(row, values, config.tolerances);
    report.rows.push_back(std::move(row));
  }

  for (const char* name : {"b_k", "h_k", "alpha_k"}) {
    for (std::uint32_t k = std::max(config.k_min, 1u); k <= config.k_max; ++k) {
      StatSummary row;
      row.statistic = name;
      row.k = k;
      row.prediction = per_k_prediction(pred, "per_k", name, k);
      std::vector<double> values;
      for (const auto& s : stats) {
        const auto* r = s.row(k);
        if (r == nullptr) continue;
        row.pair_count += r->pair_count;
        const auto& v = name[0] == 'b' ? r->b_k : name[0] == 'h' ? r->h_k : r->alpha_k;
        if (v) values.push_back(*v);
      }
      finish(row, values, config.tolerances);
      report.rows.push_back(std::move(row));
    }
  }

  for (const auto& s : stats) {
    report.pooled_vertices += s.vertex_count;
    for (const auto& [k, c] : s.degree_histogram) report.pooled_histogram[k] += c;
  }
  for (std::uint32_t k = config.k_min; k <= config.k_max; ++k) {
    StatSummary row;
    row.statistic = "degree_pmf";
    row.k = k;
    row.prediction = per_k_prediction(pred, "degree_pmf", "p", k);
    std::vector<double> values;
    for (const auto& s : stats) {
      auto it = s.degree_histogram.find(k);
      const std::uint64_t c = it == s.degree_histogram.end() ? 0 : it->second;
      row.pair_count += c;
      values.push_back(s.vertex_count > 0 ? static_cast<double>(c) / s.vertex_count : 0.0);
    }
    finish(row, values, config.tolerances);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config, std::optional<unsigned> workers) {
  const auto start = std::chrono::steady_clock::now();
  const auto prediction = prediction_for(config);
  const std::uint32_t count = config.replicates;
  std::vector<EmpiricalStats> stats(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::uint32_t> next{0};

  auto work = [&] {
    for (std::uint32_t i = next++; i < count; i = next++) {
      try {
        const auto graph = generate_replicate(config, i);
        if (!config.edge_list_dir.empty()) {
          std::filesystem::create_directories(config.edge_list_dir);
          std::ofstream out(std::filesystem::path(config.edge_list_dir) /
                            ("replicate_" + std::to_string(i) + ".txt"));
          if (!out) throw std::runtime_error("cannot write edge list to " + config.edge_list_dir);
          write_edge_list(out, graph);
        }
        stats[i] = compute_stats(graph);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers.value_or(default_workers()), count));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw ReplicateError(i, e.what());
    }
  }
  auto report = summarize(config, stats, prediction);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row = {{"statistic", r.statistic},
                          {"k", r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr)},
                          {"empirical_mean", opt_json(r.empirical_mean)},
                          {"se", opt_json(r.standard_error)},
                          {"prediction", opt_json(r.prediction)},
                          {"zscore", opt_json(r.zscore)},
                          {"defined_replicates", r.defined_replicates},
                          {"pair_count", r.pair_count}};
    if (r.within_tolerance) row["within_tolerance"] = *r.within_tolerance;
    rows.push_back(std::move(row));
  }
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& [k, c] : report.pooled_histogram) hist.push_back({{"k", k}, {"count", c}});
  nlohmann::json meta = {{"tool", "riglab"}, {"version", kVersion}};
  if (report.config.record_timing) meta["wall_time_seconds"] = report.wall_seconds;
  return {{"config", report.config.to_json()},
          {"prediction", report.prediction},
          {"statistics", std::move(rows)},
          {"degree_histogram", std::move(hist)},
          {"pooled_vertices", report.pooled_vertices},
          {"metadata", std::move(meta)}};
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out.precision(17);
  auto cell = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  out << "statistic,k,empirical_mean,se,prediction,zscore\n";
  for (const auto& r : report.rows) {
    out << r.statistic << ',';
    if (r.k) out << *r.k;
    out << ',';
    cell(r.empirical_mean);
    out << ',';
    cell(r.standard_error);
    out << ',';
    cell(r.prediction);
    out << ',';
    cell(r.zscore);
    out << '\n';
  }
  return out.str();
}

}  // namespace rig
