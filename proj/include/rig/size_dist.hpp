#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rig/rng.hpp"

namespace rig {

/// One support point of a finite discrete law.
struct Atom {
  std::uint64_t value = 0;
  double prob = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite discrete law on the non-negative integers.
///
/// Used both for attribute-set sizes and for the limit variables that the
/// asymptotic formulas consume. Immutable after construction; sampling is a
/// binary search over a precomputed cumulative table.
class SizeDistribution {
 public:
  /// Point mass at 0.
  SizeDistribution();

  /// Point mass at x.
  static SizeDistribution degenerate(std::uint64_t x);

  /// Binomial(trials, p), stored as its explicit pmf.
  static SizeDistribution binomial(std::uint64_t trials, double p);

  /// P(v) proportional to v^-exponent on 1..xmax.
  static SizeDistribution zipf(double exponent, std::uint64_t xmax);

  /// Poisson(mean) truncated to 0..cutoff and renormalized. The discarded
  /// upper tail is reported by tail_mass().
  static SizeDistribution poisson(double mean, std::uint64_t cutoff);

  /// Explicit table. Values must be distinct, probabilities non-negative and
  /// summing to 1 within 1e-12. Order of input does not matter.
  static SizeDistribution table(std::vector<Atom> atoms);

  std::span<const Atom> support() const noexcept { return atoms_; }
  std::uint64_t max_value() const noexcept { return atoms_.back().value; }
  std::uint64_t min_value() const noexcept { return atoms_.front().value; }
  /// Probability mass dropped by truncation before renormalization.
  double tail_mass() const noexcept { return tail_mass_; }

  /// Probability of exactly v (0 off-support).
  double pmf(std::uint64_t v) const noexcept;
  /// P(X >= v).
  double prob_at_least(std::uint64_t v) const noexcept;

  double mean() const noexcept { return raw_moment(1); }

  /// E X^i.
  double raw_moment(int i) const;
  /// E (X)_i with (x)_i = x(x-1)...(x-i+1).
  double factorial_moment(int i) const;
  /// E C(X, s)^k, with C(v, s) = 0 for v < s.
  double joint_moment(int s, int k) const;

  std::uint64_t sample(Rng& rng) const noexcept;

  /// Law of f(X), merging atoms that map to the same value.
  template <class F>
  SizeDistribution map(F&& f) const {
    std::vector<Atom> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back({f(a.value), a.prob});
    return from_merged(std::move(out), tail_mass_);
  }

  /// JSON description that round-trips through from_json().
  nlohmann::json to_json() const;
  static SizeDistribution from_json(const nlohmann::json& j);

  /// Compact form used on the command line:
  ///   degenerate:3  binomial:10,0.3  zipf:3.5,50  poisson:2,60
  ///   table:0=0.5,2=0.5
  static SizeDistribution parse(std::string_view text);

  friend bool operator==(const SizeDistribution& a, const SizeDistribution& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  static SizeDistribution from_merged(std::vector<Atom> atoms, double tail);
  void finalize();

  std::vector<Atom> atoms_;
  std::vector<double> cdf_;
  double tail_mass_ = 0.0;
  nlohmann::json origin_;
};

/// Falling factorial (x)_i as a double.
double falling_factorial(std::uint64_t x, int i) noexcept;
/// Binomial coefficient C(x, s) as a double; 0 when x < s.
double binomial_coefficient(std::uint64_t x, std::uint64_t s) noexcept;

/// Moment functionals of a law up to some order.
///
/// `a` holds E C(X, s)^i for the configured s; the other vectors are raw
/// and factorial moments. Index 0 of every vector is order 1.
struct MomentSet {
  int s = 1;
  std::vector<double> raw;        // x_i = E X^i
  std::vector<double> factorial;  // y_i = E (X)_i
  std::vector<double> joint;      // a_i = E C(X, s)^i

  static MomentSet of(const SizeDistribution& dist, int order, int s = 1);

  double x(int i) const { return raw.at(static_cast<std::size_t>(i - 1)); }
  double y(int i) const { return factorial.at(static_cast<std::size_t>(i - 1)); }
  double a(int i) const { return joint.at(static_cast<std::size_t>(i - 1)); }
};

}  // namespace rig
