#include "rig/active_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace rig {

void ActiveModelSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (s < 1 || s > m) throw std::invalid_argument("s must satisfy 1 <= s <= m");
  if (size_dist.max_value() > m) {
    throw std::invalid_argument("size_dist support value " + std::to_string(size_dist.max_value()) +
                                " exceeds m = " + std::to_string(m));
  }
}

double ActiveModelSpec::beta() const { return binomial_coefficient(m, s) / n; }

std::vector<std::uint32_t> sample_subset(std::uint32_t m, std::uint32_t k, Rng& rng) {
  if (k > m) throw std::invalid_argument("subset size exceeds ground set");
  std::vector<std::uint32_t> out(k);
  if (k == m) {
    std::iota(out.begin(), out.end(), 0u);
    return out;
  }
  // Positions of the virtual array a[0..m) that differ from a[i] = i.
  std::unordered_map<std::uint32_t, std::uint32_t> moved;
  moved.reserve(2 * static_cast<std::size_t>(k));
  auto at = [&](std::uint32_t i) {
    auto it = moved.find(i);
    return it == moved.end() ? i : it->second;
  };
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(m - i));
    const auto aj = at(j);
    const auto ai = at(i);
    out[i] = aj;
    moved[j] = ai;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint32_t>> sample_attribute_sets(const ActiveModelSpec& spec) {
  spec.validate();
  std::vector<std::vector<std::uint32_t>> sets(spec.n);
  for (std::uint32_t i = 0; i < spec.n; ++i) {
    Rng rng(spec.seed, i);
    const auto size = static_cast<std::uint32_t>(spec.size_dist.sample(rng));
    sets[i] = sample_subset(spec.m, size, rng);
  }
  return sets;
}

namespace {

std::size_t overlap(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

void emit_group_pairs(std::span<const std::uint32_t> members, std::vector<std::uint64_t>& out) {
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      out.push_back(pack_edge(members[a], members[b]));
    }
  }
}

std::vector<std::uint64_t> candidates_single(std::uint32_t m,
                                             const std::vector<std::vector<std::uint32_t>>& sets) {
  // attribute -> holders, as CSR
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& d : sets) {
    for (auto w : d) ++offsets[w + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::uint32_t> holders(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t v = 0; v < sets.size(); ++v) {
    for (auto w : sets[v]) holders[cursor[w]++] = v;
  }
  std::vector<std::uint64_t> pairs;
  for (std::uint32_t w = 0; w < m; ++w) {
    emit_group_pairs({holders.data() + offsets[w], holders.data() + offsets[w + 1]}, pairs);
  }
  return pairs;
}

std::vector<std::uint64_t> candidates_joint(std::uint32_t s,
                                            const std::vector<std::vector<std::uint32_t>>& sets,
                                            std::uint64_t joint_budget) {
  // Flat storage: tuple t occupies joints[t*s .. t*s+s), owned by owner[t].
  std::vector<std::uint32_t> joints;
  std::vector<std::uint32_t> owner;
  std::vector<std::size_t> idx(s);
  for (std::uint32_t v = 0; v < sets.size(); ++v) {
    const auto& d = sets[v];
    if (d.size() < s) continue;
    const double count = binomial_coefficient(d.size(), s);
    if (count > static_cast<double>(joint_budget)) {
      throw std::runtime_error("vertex " + std::to_string(v) + " has " +
                               std::to_string(static_cast<std::uint64_t>(count)) +
                               " joints, above the budget of " + std::to_string(joint_budget));
    }
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      for (auto i : idx) joints.push_back(d[i]);
      owner.push_back(v);
      // next s-combination of positions in lexicographic order
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == d.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < s; ++q) idx[q] = idx[q - 1] + 1;
    }
  }

  const std::size_t tuples = owner.size();
  std::vector<std::size_t> order(tuples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto tuple = [&](std::size_t t) {
    return std::span<const std::uint32_t>(joints.data() + t * s, s);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ta = tuple(a);
    auto tb = tuple(b);
    if (std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end())) return true;
    if (std::lexicographical_compare(tb.begin(), tb.end(), ta.begin(), ta.end())) return false;
    return owner[a] < owner[b];
  });

  std::vector<std::uint64_t> pairs;
  std::vector<std::uint32_t> group;
  for (std::size_t i = 0; i < tuples;) {
    std::size_t j = i;
    group.clear();
    while (j < tuples && std::ranges::equal(tuple(order[i]), tuple(order[j]))) {
      group.push_back(owner[order[j]]);
      ++j;
    }
    emit_group_pairs(group, pairs);
    i = j;
  }
  return pairs;
}

}  // namespace

Graph active_graph_from_sets(std::uint32_t m, std::uint32_t s,
                             const std::vector<std::vector<std::uint32_t>>& sets,
                             std::uint64_t joint_budget) {
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  const auto n = static_cast<Vertex>(sets.size());
  if (s == 1) return Graph::from_packed(n, candidates_single(m, sets));

  auto pairs = candidates_joint(s, sets, joint_budget);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::erase_if(pairs, [&](std::uint64_t p) {
    return overlap(sets[p >> 32], sets[static_cast<std::uint32_t>(p)]) < s;
  });
  return Graph::from_packed(n, std::move(pairs));
}

Graph generate_active(const ActiveModelSpec& spec) {
  return active_graph_from_sets(spec.m, spec.s, sample_attribute_sets(spec), spec.joint_budget);
}

namespace {

// Weights of H = h for h in [lo, hi], where H is the overlap of uniform k1-
// and k2-subsets of an m-set; P(H = h) = weight / total. When C(m, k2) fits
// in a double exactly the weights are integer subset counts.
struct OverlapLaw {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::vector<double> weight;
  double total = 1.0;
};

OverlapLaw overlap_law(std::uint32_t m, std::uint32_t k1, std::uint32_t k2) {
  OverlapLaw law;
  law.lo = (k1 + k2 > m) ? k1 + k2 - m : 0;
  law.hi = std::min(k1, k2);
  const double total = binomial_coefficient(m, k2);
  if (total < 9.0e15) {
    law.total = total;
    for (std::uint32_t h = law.lo; h <= law.hi; ++h) {
      law.weight.push_back(binomial_coefficient(k1, h) * binomial_coefficient(m - k1, k2 - h));
    }
  } else {
    auto lchoose = [](double a, double b) {
      return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
    };
    const double lt = lchoose(m, k2);
    for (std::uint32_t h = law.lo; h <= law.hi; ++h) {
      law.weight.push_back(std::exp(lchoose(k1, h) + lchoose(m - k1, k2 - h) - lt));
    }
  }
  return law;
}

void check_overlap_args(std::uint32_t m, std::uint32_t s, std::uint32_t k1, std::uint32_t k2) {
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  if (k1 > m || k2 > m) throw std::invalid_argument("set sizes must not exceed m");
}

}  // namespace

double edge_probability_exact(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                              std::uint32_t k2) {
  check_overlap_args(m, s, k1, k2);
  const auto law = overlap_law(m, k1, k2);
  if (s > law.hi) return 0.0;
  if (s <= law.lo) return 1.0;
  double upper = 0.0;
  for (std::uint32_t h = s; h <= law.hi; ++h) upper += law.weight[h - law.lo];
  return upper / law.total;
}

double overlap_probability_exact(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                                 std::uint32_t k2) {
  check_overlap_args(m, s, k1, k2);
  const auto law = overlap_law(m, k1, k2);
  return (s < law.lo || s > law.hi) ? 0.0 : law.weight[s - law.lo] / law.total;
}

OverlapBounds overlap_probability_bounds(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                                         std::uint32_t k2) {
  check_overlap_args(m, s, k1, k2);
  const double upper =
      binomial_coefficient(k1, s) * binomial_coefficient(k2, s) / binomial_coefficient(m, s);
  const double shrink = 1.0 - static_cast<double>(k1 >= s ? k1 - s : 0) *
                                  static_cast<double>(k2 >= s ? k2 - s : 0) /
                                  static_cast<double>(m + 1 - std::min(k1, k2));
  return {std::max(0.0, shrink) * upper, upper};
}

}  // namespace rig
