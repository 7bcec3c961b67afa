#include "rig/size_dist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rig {

namespace {

double sum_probs(const std::vector<Atom>& atoms) {
  double total = 0.0;
  for (const auto& a : atoms) total += a.prob;
  return total;
}

std::vector<Atom> normalized(std::vector<Atom> atoms) {
  const double total = sum_probs(atoms);
  if (!(total > 0.0)) throw std::invalid_argument("distribution has zero total mass");
  for (auto& a : atoms) a.prob /= total;
  return atoms;
}

double parse_double(std::string_view s, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" +
                                std::string(s) + "'");
  }
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" +
                                std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

double falling_factorial(std::uint64_t x, int i) noexcept {
  double r = 1.0;
  for (int j = 0; j < i; ++j) {
    if (x < static_cast<std::uint64_t>(j + 1)) return 0.0;
    r *= static_cast<double>(x - static_cast<std::uint64_t>(j));
  }
  return r;
}

double binomial_coefficient(std::uint64_t x, std::uint64_t s) noexcept {
  if (x < s) return 0.0;
  s = std::min(s, x - s);
  double r = 1.0;
  for (std::uint64_t j = 1; j <= s; ++j) {
    r = r * static_cast<double>(x - s + j) / static_cast<double>(j);
  }
  return r < 9.0e15 ? std::round(r) : r;
}

SizeDistribution::SizeDistribution() : atoms_{{0, 1.0}}, cdf_{1.0} {
  origin_ = {{"kind", "degenerate"}, {"value", 0}};
}

SizeDistribution SizeDistribution::degenerate(std::uint64_t x) {
  SizeDistribution d;
  d.atoms_.clear();
  d.atoms_ = {{x, 1.0}};
  d.origin_ = {{"kind", "degenerate"}, {"value", x}};
  d.finalize();
  return d;
}

SizeDistribution SizeDistribution::binomial(std::uint64_t trials, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p must lie in [0,1]");
  SizeDistribution d;
  d.atoms_.clear();
  if (p == 0.0) {
    d.atoms_ = {{0, 1.0}};
  } else if (p == 1.0) {
    d.atoms_ = {{trials, 1.0}};
  } else {
    const double n = static_cast<double>(trials);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lg_n = std::lgamma(n + 1.0);
    for (std::uint64_t k = 0; k <= trials; ++k) {
      const double kk = static_cast<double>(k);
      const double logp =
          lg_n - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) + kk * lp + (n - kk) * lq;
      const double pr = std::exp(logp);
      if (pr > 0.0) d.atoms_.push_back({k, pr});
    }
    d.atoms_ = normalized(std::move(d.atoms_));
  }
  d.origin_ = {{"kind", "binomial"}, {"trials", trials}, {"p", p}};
  d.finalize();
  return d;
}

SizeDistribution SizeDistribution::zipf(double exponent, std::uint64_t xmax) {
  if (xmax < 1) throw std::invalid_argument("zipf xmax must be >= 1");
  if (!std::isfinite(exponent)) throw std::invalid_argument("zipf exponent must be finite");
  SizeDistribution d;
  d.atoms_.clear();
  d.atoms_.reserve(xmax);
  for (std::uint64_t v = 1; v <= xmax; ++v) {
    d.atoms_.push_back({v, std::pow(static_cast<double>(v), -exponent)});
  }
  d.atoms_ = normalized(std::move(d.atoms_));
  d.origin_ = {{"kind", "zipf"}, {"exponent", exponent}, {"xmax", xmax}};
  d.finalize();
  return d;
}

SizeDistribution SizeDistribution::poisson(double mean, std::uint64_t cutoff) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson mean must be finite and >= 0");
  }
  SizeDistribution d;
  d.atoms_.clear();
  if (mean == 0.0) {
    d.atoms_ = {{0, 1.0}};
  } else {
    for (std::uint64_t k = 0; k <= cutoff; ++k) {
      const double kk = static_cast<double>(k);
      const double pr = std::exp(kk * std::log(mean) - mean - std::lgamma(kk + 1.0));
      if (pr > 0.0) d.atoms_.push_back({k, pr});
    }
    double tail = 0.0;
    for (std::uint64_t k = cutoff + 1;; ++k) {
      const double kk = static_cast<double>(k);
      const double pr = std::exp(kk * std::log(mean) - mean - std::lgamma(kk + 1.0));
      tail += pr;
      if (kk > mean && pr <= tail * 1e-17) break;
    }
    d.tail_mass_ = tail;
    d.atoms_ = normalized(std::move(d.atoms_));
  }
  d.origin_ = {{"kind", "poisson"}, {"mean", mean}, {"cutoff", cutoff}};
  d.finalize();
  return d;
}

SizeDistribution SizeDistribution::table(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("distribution table is empty");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].prob >= 0.0) || !std::isfinite(atoms[i].prob)) {
      throw std::invalid_argument("distribution table has a negative or non-finite probability");
    }
    if (i > 0 && atoms[i].value == atoms[i - 1].value) {
      throw std::invalid_argument("distribution table repeats value " +
                                  std::to_string(atoms[i].value));
    }
  }
  if (std::abs(sum_probs(atoms) - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution table probabilities do not sum to 1");
  }
  SizeDistribution d;
  d.atoms_.clear();
  d.atoms_ = std::move(atoms);
  nlohmann::json pmf = nlohmann::json::array();
  for (const auto& a : d.atoms_) pmf.push_back({a.value, a.prob});
  d.origin_ = {{"kind", "table"}, {"pmf", std::move(pmf)}};
  d.finalize();
  return d;
}

SizeDistribution SizeDistribution::from_merged(std::vector<Atom> atoms, double tail) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }
  SizeDistribution d;
  d.atoms_.clear();
  d.atoms_ = std::move(merged);
  d.tail_mass_ = tail;
  nlohmann::json pmf = nlohmann::json::array();
  for (const auto& a : d.atoms_) pmf.push_back({a.value, a.prob});
  d.origin_ = {{"kind", "table"}, {"pmf", std::move(pmf)}};
  d.finalize();
  return d;
}

void SizeDistribution::finalize() {
  cdf_.resize(atoms_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += atoms_[i].prob;
    cdf_[i] = acc;
  }
}

double SizeDistribution::pmf(std::uint64_t v) const noexcept {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), v,
                             [](const Atom& a, std::uint64_t x) { return a.value < x; });
  return (it != atoms_.end() && it->value == v) ? it->prob : 0.0;
}

double SizeDistribution::prob_at_least(std::uint64_t v) const noexcept {
  double p = 0.0;
  for (const auto& a : atoms_) {
    if (a.value >= v) p += a.prob;
  }
  return p;
}

double SizeDistribution::raw_moment(int i) const {
  if (i < 1) throw std::invalid_argument("moment order must be >= 1");
  double total = 0.0;
  for (const auto& a : atoms_) total += a.prob * std::pow(static_cast<double>(a.value), i);
  return total;
}

double SizeDistribution::factorial_moment(int i) const {
  if (i < 1) throw std::invalid_argument("moment order must be >= 1");
  double total = 0.0;
  for (const auto& a : atoms_) total += a.prob * falling_factorial(a.value, i);
  return total;
}

double SizeDistribution::joint_moment(int s, int k) const {
  if (s < 1 || k < 1) throw std::invalid_argument("joint moment needs s >= 1 and k >= 1");
  double total = 0.0;
  for (const auto& a : atoms_) {
    total += a.prob * std::pow(binomial_coefficient(a.value, static_cast<std::uint64_t>(s)), k);
  }
  return total;
}

std::uint64_t SizeDistribution::sample(Rng& rng) const noexcept {
  if (atoms_.size() == 1) return atoms_.front().value;
  const double u = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return atoms_[static_cast<std::size_t>(it - cdf_.begin())].value;
}

nlohmann::json SizeDistribution::to_json() const { return origin_; }

SizeDistribution SizeDistribution::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("distribution: missing string field 'kind'");
  }
  const auto kind = j["kind"].get<std::string>();
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!j.contains(name)) {
      throw std::invalid_argument("distribution '" + kind + "': missing field '" + name + "'");
    }
    return j[name];
  };
  auto uint_field = [&](const char* name) {
    const auto& f = field(name);
    if (!f.is_number_unsigned() && !(f.is_number_integer() && f.get<std::int64_t>() >= 0)) {
      throw std::invalid_argument("distribution '" + kind + "': field '" + name +
                                  "' must be a non-negative integer");
    }
    return f.get<std::uint64_t>();
  };
  auto real_field = [&](const char* name) {
    const auto& f = field(name);
    if (!f.is_number()) {
      throw std::invalid_argument("distribution '" + kind + "': field '" + name +
                                  "' must be a number");
    }
    return f.get<double>();
  };
  if (kind == "degenerate") return degenerate(uint_field("value"));
  if (kind == "binomial") return binomial(uint_field("trials"), real_field("p"));
  if (kind == "zipf") return zipf(real_field("exponent"), uint_field("xmax"));
  if (kind == "poisson") return poisson(real_field("mean"), uint_field("cutoff"));
  if (kind == "table") {
    const auto& pmf = field("pmf");
    if (!pmf.is_array()) throw std::invalid_argument("distribution 'table': 'pmf' must be an array");
    std::vector<Atom> atoms;
    for (const auto& entry : pmf) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
          !entry[1].is_number() || entry[0].get<std::int64_t>() < 0) {
        throw std::invalid_argument(
            "distribution 'table': each 'pmf' entry must be [value, probability]");
      }
      atoms.push_back({entry[0].get<std::uint64_t>(), entry[1].get<double>()});
    }
    return table(std::move(atoms));
  }
  throw std::invalid_argument("distribution: unknown kind '" + kind + "'");
}

SizeDistribution SizeDistribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution '" + std::string(text) +
                                "' must look like kind:params");
  }
  const auto kind = text.substr(0, colon);
  const auto args = split(text.substr(colon + 1), ',');
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw std::invalid_argument("distribution '" + std::string(kind) + "' expects " +
                                  std::to_string(count) + " parameter(s)");
    }
  };
  if (kind == "degenerate") {
    expect(1);
    return degenerate(parse_uint(args[0], "value"));
  }
  if (kind == "binomial") {
    expect(2);
    return binomial(parse_uint(args[0], "trials"), parse_double(args[1], "p"));
  }
  if (kind == "zipf") {
    expect(2);
    return zipf(parse_double(args[0], "exponent"), parse_uint(args[1], "xmax"));
  }
  if (kind == "poisson") {
    expect(2);
    return poisson(parse_double(args[0], "mean"), parse_uint(args[1], "cutoff"));
  }
  if (kind == "table") {
    std::vector<Atom> atoms;
    for (auto entry : args) {
      const auto eq = entry.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("table entry '" + std::string(entry) + "' must be value=prob");
      }
      atoms.push_back({parse_uint(entry.substr(0, eq), "value"),
                       parse_double(entry.substr(eq + 1), "probability")});
    }
    return table(std::move(atoms));
  }
  throw std::invalid_argument("unknown distribution kind '" + std::string(kind) + "'");
}

MomentSet MomentSet::of(const SizeDistribution& dist, int order, int s) {
  MomentSet m;
  m.s = s;
  for (int i = 1; i <= order; ++i) {
    m.raw.push_back(dist.raw_moment(i));
    m.factorial.push_back(dist.factorial_moment(i));
    m.joint.push_back(dist.joint_moment(s, i));
  }
  return m;
}

}  // namespace rig
