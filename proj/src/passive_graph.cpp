#include "rig/passive_graph.hpp"

#include <stdexcept>
#include <string>

#include "rig/active_graph.hpp"

namespace rig {

void PassiveModelSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (size_dist.max_value() > m) {
    throw std::invalid_argument("size_dist support value " + std::to_string(size_dist.max_value()) +
                                " exceeds m = " + std::to_string(m));
  }
}

std::vector<std::vector<std::uint32_t>> sample_passive_sets(const PassiveModelSpec& spec) {
  spec.validate();
  std::vector<std::vector<std::uint32_t>> sets(spec.n);
  for (std::uint32_t k = 0; k < spec.n; ++k) {
    Rng rng(spec.seed, k);
    const auto size = static_cast<std::uint32_t>(spec.size_dist.sample(rng));
    sets[k] = sample_subset(spec.m, size, rng);
  }
  return sets;
}

Graph passive_graph_from_sets(std::uint32_t m,
                              const std::vector<std::vector<std::uint32_t>>& sets) {
  std::vector<std::uint64_t> links;
  std::size_t total = 0;
  for (const auto& d : sets) total += d.size() * (d.size() - (d.empty() ? 0 : 1)) / 2;
  links.reserve(total);
  for (const auto& d : sets) {
    for (std::size_t a = 0; a < d.size(); ++a) {
      if (d[a] >= m) throw std::invalid_argument("set member out of range");
      for (std::size_t b = a + 1; b < d.size(); ++b) links.push_back(pack_edge(d[a], d[b]));
    }
  }
  // Parallel links from different sets collapse here.
  return Graph::from_packed(m, std::move(links));
}

Graph generate_passive(const PassiveModelSpec& spec) {
  return passive_graph_from_sets(spec.m, sample_passive_sets(spec));
}

}  // namespace rig
