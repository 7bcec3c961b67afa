#include "rig/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rig/active_graph.hpp"
#include "rig/graph.hpp"
#include "rig/graph_stats.hpp"
#include "rig/harness.hpp"
#include "rig/oracle.hpp"
#include "rig/passive_graph.hpp"
#include "rig/theory_active.hpp"
#include "rig/theory_passive.hpp"
#include "rig/version.hpp"

namespace rig {

namespace {

// Errors caused by bad user input; mapped to exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Sink {
  std::ostream& fallback;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      fallback << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
}

SizeDistribution parse_dist(const std::string& text) {
  try {
    if (!text.empty() && text.front() == '{') {
      return SizeDistribution::from_json(nlohmann::json::parse(text));
    }
    return SizeDistribution::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--dist: ") + e.what());
  }
}

Model parse_model(const std::string& text) {
  if (text == "active") return Model::active;
  if (text == "passive") return Model::passive;
  throw UsageError("--model must be 'active' or 'passive'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::string model = "active";
  std::uint32_t n = 1;
  std::uint32_t m = 1;
  std::uint32_t s = 1;
  std::string dist;
  std::uint64_t seed = 0;
  std::string out;
};

void run_generate(const GenerateOptions& o, std::ostream& out) {
  const auto model = parse_model(o.model);
  const auto dist = parse_dist(o.dist);
  Graph graph;
  nlohmann::json meta = {{"model", to_string(model)}, {"n", o.n},       {"m", o.m},
                         {"seed", o.seed},            {"dist", dist.to_json()}};
  try {
    if (model == Model::active) {
      ActiveModelSpec spec{o.n, o.m, o.s, dist, o.seed};
      spec.validate();
      meta["s"] = o.s;
      graph = generate_active(spec);
    } else {
      if (o.s != 1) throw std::invalid_argument("the passive model supports s = 1 only");
      PassiveModelSpec spec{o.n, o.m, dist, o.seed};
      spec.validate();
      graph = generate_passive(spec);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  write_edge_list(text, graph);
  Sink{out, o.out}.write(text.str());
  if (!o.out.empty() && o.out != "-") write_file(o.out + ".meta.json", dump(meta));
}

// ------------------------------------------------------------------- stats

struct StatsOptions {
  std::string input;
  std::string format = "json";
  std::string out;
};

void run_stats(const StatsOptions& o, std::ostream& out) {
  std::ifstream in(o.input);
  if (!in) throw std::runtime_error("cannot open '" + o.input + "'");
  Graph graph;
  try {
    graph = read_edge_list(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(o.input + ": " + e.what());
  }
  const auto stats = compute_stats(graph);
  Sink{out, o.out}.write(o.format == "csv" ? per_k_csv(stats) : dump(to_json(stats)));
}

// ----------------------------------------------------------------- predict

struct PredictOptions {
  std::string model = "active";
  std::string dist;
  std::uint32_t s = 1;
  std::optional<double> beta;
  std::optional<std::uint32_t> n;
  std::optional<std::uint32_t> m;
  std::optional<std::size_t> kmax;
  std::string format = "json";
  std::string out;
};

nlohmann::json predict(const PredictOptions& o) {
  const auto model = parse_model(o.model);
  const auto dist = parse_dist(o.dist);
  try {
    if (model == Model::active) {
      if (o.n && o.m && !o.beta) {
        ActiveModelSpec spec{*o.n, *o.m, o.s, dist, 0};
        return to_json(predict_active(ActiveLimitSpec::from_model(spec), o.kmax));
      }
      if (!o.beta) throw UsageError("predict needs --beta, or --n and --m");
      return to_json(predict_active(ActiveLimitSpec::from_sizes(dist, o.s, *o.beta), o.kmax));
    }
    if (o.s != 1) throw UsageError("the passive model supports s = 1 only");
    double beta = 0.0;
    if (o.beta) {
      beta = *o.beta;
    } else if (o.n && o.m) {
      beta = static_cast<double>(*o.m) / *o.n;
    } else {
      throw UsageError("predict needs --beta, or --n and --m");
    }
    std::optional<double> m;
    if (o.m) m = *o.m;
    return to_json(predict_passive(dist, beta, m, o.kmax));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// -------------------------------------------------------------- experiment

struct ExperimentOptions {
  std::string config;
  std::string format = "json";
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
};

void run_experiment_cmd(const ExperimentOptions& o, std::ostream& out) {
  std::ifstream in(o.config);
  if (!in) throw std::runtime_error("cannot open config '" + o.config + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  auto config = ExperimentConfig::from_json(j);
  if (o.seed) config.base_seed = *o.seed;
  const auto report = run_experiment(config, o.workers);
  const auto json_text = dump(to_json(report));
  const auto csv_text = to_csv(report);
  if (!config.report_json.empty()) write_file(config.report_json, json_text);
  if (!config.report_csv.empty()) write_file(config.report_csv, csv_text);
  Sink{out, o.out}.write(o.format == "csv" ? csv_text : json_text);
}

// ------------------------------------------------------------------ oracle

struct OracleOptions {
  std::uint64_t seed = 1;
  std::uint32_t graphs = 200;
  std::string out;
};

bool close(const std::optional<double>& a, const std::optional<double>& b, double tol,
           double& worst) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  const double err = std::abs(*a - *b);
  worst = std::max(worst, err);
  return err <= tol;
}

nlohmann::json check_statistics(std::uint32_t graphs, std::uint64_t seed) {
  Rng rng(seed, 0x57a7);
  double worst = 0.0;
  double worst_identity = 0.0;
  std::uint32_t failures = 0;
  for (std::uint32_t t = 0; t < graphs; ++t) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(30));
    const double p = rng.uniform();
    const auto g = oracle::random_graph(n, p, rng());
    const auto fast = compute_stats(g);
    const auto slow = oracle::brute_force_stats(g);
    bool ok = close(fast.b, slow.b, 1e-12, worst) && close(fast.b_prime, slow.b_prime, 1e-12, worst) &&
              close(fast.g, slow.g, 1e-12, worst) && close(fast.h, slow.h, 1e-12, worst) &&
              close(fast.r, slow.r, 1e-12, worst) && close(fast.alpha, slow.alpha, 1e-12, worst) &&
              fast.degree_histogram == slow.histogram;
    for (const auto& row : fast.per_k) {
      const auto it = slow.per_k.find(row.k);
      if (it == slow.per_k.end()) {
        ok = false;
        continue;
      }
      ok = ok && row.pair_count == it->second.pair_count &&
           close(row.b_k, it->second.b_k, 1e-12, worst) &&
           close(row.h_k, it->second.h_k, 1e-12, worst) &&
           close(row.alpha_k, it->second.alpha_k, 1e-12, worst);
      if (row.alpha_k && row.h_k) {
        const double err = std::abs(*row.h_k - (row.k - 1.0) * *row.alpha_k);
        worst_identity = std::max(worst_identity, err);
        ok = ok && err <= 1e-12;
      }
    }
    failures += ok ? 0 : 1;
  }
  return {{"name", "statistics_vs_brute_force"},
          {"cases", graphs},
          {"failures", failures},
          {"max_error", worst},
          {"max_identity_error", worst_identity},
          {"passed", failures == 0}};
}

nlohmann::json check_edge_probability() {
  std::uint32_t cases = 0;
  std::uint32_t failures = 0;
  double worst = 0.0;
  for (std::uint32_t m = 1; m <= 7; ++m) {
    for (std::uint32_t s = 1; s <= std::min(3u, m); ++s) {
      for (std::uint32_t k1 = 0; k1 <= m; ++k1) {
        for (std::uint32_t k2 = 0; k2 <= m; ++k2) {
          ++cases;
          const double exact = edge_probability_exact(m, s, k1, k2);
          const double count = oracle::enumerate_edge_probability(m, s, k1, k2);
          worst = std::max(worst, std::abs(exact - count));
          bool ok = exact == count;
          if (s <= k1 && k1 <= k2) {
            const auto bounds = overlap_probability_bounds(m, s, k1, k2);
            const double eq = overlap_probability_exact(m, s, k1, k2);
            ok = ok && bounds.lower <= eq + 1e-15 && eq <= exact + 1e-15 &&
                 exact <= bounds.upper + 1e-15;
          }
          failures += ok ? 0 : 1;
        }
      }
    }
  }
  return {{"name", "edge_probability_vs_enumeration"},
          {"cases", cases},
          {"failures", failures},
          {"max_error", worst},
          {"passed", failures == 0}};
}

nlohmann::json check_compound_pmf() {
  const std::vector<std::pair<SizeDistribution, double>> grid = {
      {SizeDistribution::degenerate(3), 1.0},
      {SizeDistribution::table({{1, 0.5}, {2, 0.5}}), 1.0},
      {SizeDistribution::table({{2, 0.5}, {3, 0.5}}), 0.5},
      {SizeDistribution::binomial(6, 0.4), 2.0},
      {SizeDistribution::zipf(3.5, 12), 0.25},
  };
  double worst = 0.0;
  for (const auto& [z, beta] : grid) {
    const auto model = CompoundPoissonModel::make(z, beta);
    const auto fast = compound_pmf(model, 100);
    const auto slow = oracle::compound_pmf_convolution(z, beta, 100, 200);
    for (std::size_t k = 0; k <= 100; ++k) worst = std::max(worst, std::abs(fast[k] - slow[k]));
  }
  return {{"name", "compound_pmf_vs_convolution"},
          {"cases", grid.size()},
          {"max_error", worst},
          {"passed", worst <= 1e-10}};
}

bool run_oracle(const OracleOptions& o, std::ostream& out) {
  nlohmann::json checks = nlohmann::json::array();
  checks.push_back(check_statistics(o.graphs, o.seed));
  checks.push_back(check_edge_probability());
  checks.push_back(check_compound_pmf());
  bool passed = true;
  for (const auto& c : checks) passed = passed && c["passed"].get<bool>();
  Sink{out, o.out}.write(dump({{"checks", checks}, {"passed", passed}}));
  return passed;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"riglab: random intersection graph laboratory", "riglab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Sample a graph and write its edge list");
  generate->add_option("--model", gen.model, "active or passive")->capture_default_str();
  generate->add_option("--n", gen.n, "Vertices (active) or sets (passive)")->required();
  generate->add_option("--m", gen.m, "Attributes (active) or vertices (passive)")->required();
  generate->add_option("--s", gen.s, "Intersection threshold")->capture_default_str();
  generate->add_option("--dist", gen.dist, "Set-size law, e.g. degenerate:3")->required();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Edge-list path (stdout when absent)");

  StatsOptions st;
  auto* stats = app.add_subcommand("stats", "Compute statistics of an edge list");
  stats->add_option("input", st.input, "Edge-list file")->required();
  stats->add_option("--format", st.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  stats->add_option("--out", st.out, "Output path (stdout when absent)");

  PredictOptions pr;
  auto* pred = app.add_subcommand("predict", "Evaluate the asymptotic formulas");
  pred->add_option("--model", pr.model)->capture_default_str();
  pred->add_option("--dist", pr.dist, "Set-size law (active) or limit law Z (passive)")->required();
  pred->add_option("--s", pr.s)->capture_default_str();
  pred->add_option("--beta", pr.beta, "Sparsity limit beta");
  pred->add_option("--n", pr.n, "Derive beta from n and m");
  pred->add_option("--m", pr.m, "Derive beta from n and m; vertex count for passive clustering");
  pred->add_option("--kmax", pr.kmax, "Largest degree tabulated");
  pred->add_option("--format", pr.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  pred->add_option("--out", pr.out);

  ExperimentOptions ex;
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a config");
  exp->add_option("--config", ex.config, "Experiment config (JSON)")->required();
  exp->add_option("--seed", ex.seed, "Override base_seed");
  exp->add_option("--workers", ex.workers, "Worker threads (default: RIG_WORKERS or all cores)");
  exp->add_option("--format", ex.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  exp->add_option("--out", ex.out);

  OracleOptions orc;
  auto* ora = app.add_subcommand("oracle", "Cross-check fast code paths against brute force");
  ora->add_option("--seed", orc.seed)->capture_default_str();
  ora->add_option("--graphs", orc.graphs, "Random graphs to check")->capture_default_str();
  ora->add_option("--out", orc.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) {
      run_generate(gen, out);
    } else if (stats->parsed()) {
      run_stats(st, out);
    } else if (pred->parsed()) {
      const auto j = predict(pr);
      Sink{out, pr.out}.write(pr.format == "csv" ? prediction_csv(j) : dump(j));
    } else if (exp->parsed()) {
      run_experiment_cmd(ex, out);
    } else if (ora->parsed()) {
      return run_oracle(orc, out) ? 0 : 2;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace rig
