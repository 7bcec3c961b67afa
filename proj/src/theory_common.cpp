#include "rig/theory_common.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rig {

std::optional<double> DualForm::gap() const {
  if (!value || !alternate) return std::nullopt;
  return std::abs(*value - *alternate);
}

double poisson_pmf(double mean, std::size_t k) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kk = static_cast<double>(k);
  return std::exp(kk * std::log(mean) - mean - std::lgamma(kk + 1.0));
}

std::size_t poisson_truncation(double mean, double tail) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("invalid Poisson mean");
  if (mean == 0.0) return 0;
  // P(> L) <= p(L+1) / (1 - mean/(L+2)) once L+2 > mean.
  for (std::size_t L = 0;; ++L) {
    const double ratio = mean / static_cast<double>(L + 2);
    if (ratio < 1.0 && poisson_pmf(mean, L + 1) / (1.0 - ratio) < tail) return L;
  }
}

std::vector<double> raw_from_factorial(const std::vector<double>& factorial) {
  const std::size_t n = factorial.size();
  // stirling[i][j] = S(i, j)
  std::vector<std::vector<double>> stirling(n + 1, std::vector<double>(n + 1, 0.0));
  stirling[0][0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= i; ++j) {
      stirling[i][j] = static_cast<double>(j) * stirling[i - 1][j] + stirling[i - 1][j - 1];
    }
  }
  std::vector<double> raw(n, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= i; ++j) raw[i - 1] += stirling[i][j] * factorial[j - 1];
  }
  return raw;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const DualForm& f) {
  return {{"value", optional_json(f.value)}, {"alternate", optional_json(f.alternate)}};
}

std::string prediction_csv(const nlohmann::json& prediction) {
  std::ostringstream out;
  out.precision(17);
  auto cell = [&](const nlohmann::json& row, const char* key) {
    if (row.contains(key) && row[key].is_number()) out << row[key].get<double>();
  };
  std::map<std::uint64_t, const nlohmann::json*> per_k;
  for (const auto& row : prediction.at("per_k")) per_k[row.at("k").get<std::uint64_t>()] = &row;
  out << "k,degree_pmf,pair_count,b_k,h_k,alpha_k\n";
  for (const auto& entry : prediction.at("degree_pmf")) {
    const auto k = entry.at("k").get<std::uint64_t>();
    out << k << ',';
    cell(entry, "p");
    out << ",,";
    if (auto it = per_k.find(k); it != per_k.end()) {
      cell(*it->second, "b_k");
      out << ',';
      cell(*it->second, "h_k");
      out << ',';
      cell(*it->second, "alpha_k");
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rig
