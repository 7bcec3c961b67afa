#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rig {

/// A quantity that has two closed forms. `value` is the primary form and
/// `alternate` the independent one; they must agree when both exist.
struct DualForm {
  std::optional<double> value;
  std::optional<double> alternate;

  /// |value - alternate|, or nullopt unless both are defined.
  std::optional<double> gap() const;
};

/// Poisson(mean) probability of k, evaluated in log space.
double poisson_pmf(double mean, std::size_t k);

/// Smallest L with P(Poisson(mean) > L) < tail.
std::size_t poisson_truncation(double mean, double tail = 1e-12);

/// Raw moments E D^i (i = 1..n) from factorial moments E (D)_j (j = 1..n),
/// via Stirling numbers of the second kind. Index 0 is order 1.
std::vector<double> raw_from_factorial(const std::vector<double>& factorial);

/// Smallest kmax with 1 - sum_{k<=kmax} pmf(k) < tail, capped at `cap`.
/// `pmf` must return P(D = k).
template <class Pmf>
std::size_t adaptive_kmax(Pmf&& pmf, double tail = 1e-9, std::size_t cap = 200) {
  double mass = 0.0;
  for (std::size_t k = 0; k <= cap; ++k) {
    mass += pmf(k);
    if (1.0 - mass < tail) return k;
  }
  return cap;
}

nlohmann::json to_json(const DualForm& f);

/// CSV view of a prediction JSON (active or passive), one row per k with the
/// same columns as the empirical per-k CSV; pair_count is left empty.
std::string prediction_csv(const nlohmann::json& prediction);
nlohmann::json optional_json(const std::optional<double>& v);

}  // namespace rig
