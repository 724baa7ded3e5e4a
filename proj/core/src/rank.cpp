#include "sift/rank.hpp"

#include <algorithm>
#include <numeric>

namespace sift {

Permutation Permutation::identity(uint32_t n) {
  Permutation p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0u);
  return p;
}

bool Permutation::is_valid() const {
  std::vector<char> seen(order.size(), 0);
  for (const uint32_t id : order) {
    if (id >= order.size() || seen[id]) return false;
    seen[id] = 1;
  }
  return true;
}

std::string Permutation::to_string(char sep) const {
  std::string out;
  for (const uint32_t id : order) {
    if (!out.empty()) out += sep;
    out += std::to_string(id);
  }
  return out;
}

std::vector<double> compute_selectivities(const EpochStats& stats) {
  if (stats.monitored == 0) throw NoSamples();
  std::vector<double> s(stats.num_cut.size());
  const double monitored = static_cast<double>(stats.monitored);
  for (size_t i = 0; i < s.size(); ++i) {
    s[i] = (monitored - static_cast<double>(stats.num_cut[i])) / monitored;
  }
  return s;
}

std::vector<double> normalize_costs(const EpochStats& stats) {
  if (stats.monitored == 0) throw NoSamples();
  std::vector<double> nc(stats.cost_nanos.size());
  const double monitored = static_cast<double>(stats.monitored);
  double max_avg = 0.0;
  for (size_t i = 0; i < nc.size(); ++i) {
    nc[i] = static_cast<double>(stats.cost_nanos[i]) / monitored;
    max_avg = std::max(max_avg, nc[i]);
  }
  if (max_avg > 0.0) {
    for (double& v : nc) v /= max_avg;
  } else {
    std::fill(nc.begin(), nc.end(), 1.0);
  }
  return nc;
}

RankVector compute_ranks(std::span<const double> norm_costs,
                         std::span<const double> selectivities) {
  if (norm_costs.size() != selectivities.size())
    throw ConfigError("cost and selectivity vectors differ in length");
  RankVector ranks(norm_costs.size());
  for (size_t i = 0; i < ranks.size(); ++i) {
    ranks[i] = norm_costs[i] / std::max(1.0 - selectivities[i], kRankEpsilon);
  }
  return ranks;
}

RankVector update_adjusted_ranks(const RankVector* previous, const RankVector& current,
                                 double momentum) {
  MomentumConfig{momentum}.validate();
  if (previous == nullptr) return current;
  if (previous->size() != current.size())
    throw ConfigError("adjusted rank vectors differ in length");
  RankVector adjusted(current.size());
  for (size_t i = 0; i < adjusted.size(); ++i) {
    adjusted[i] = (1.0 - momentum) * current[i] + momentum * (*previous)[i];
  }
  return adjusted;
}

Permutation sort_permutation(const RankVector& adj_ranks) {
  Permutation perm = Permutation::identity(static_cast<uint32_t>(adj_ranks.size()));
  std::sort(perm.order.begin(), perm.order.end(), [&](uint32_t a, uint32_t b) {
    if (adj_ranks[a] != adj_ranks[b]) return adj_ranks[a] < adj_ranks[b];
    return a < b;
  });
  return perm;
}

double expected_cost(const Permutation& perm, std::span<const double> avg_cost,
                     std::span<const double> selectivities) {
  if (perm.order.size() != avg_cost.size() || avg_cost.size() != selectivities.size())
    throw ConfigError("permutation, cost, and selectivity lengths differ");
  double total = 0.0;
  double reach = 1.0;  // probability a row reaches position k
  for (const uint32_t id : perm.order) {
    total += avg_cost[id] * reach;
    reach *= selectivities[id];
  }
  return total;
}

Permutation brute_force_best(std::span<const double> avg_cost,
                             std::span<const double> selectivities) {
  const size_t n = avg_cost.size();
  if (n != selectivities.size())
    throw ConfigError("cost and selectivity vectors differ in length");
  if (n > 8) throw ConfigError("brute_force_best refuses n > 8 (factorial guard)");
  Permutation candidate = Permutation::identity(static_cast<uint32_t>(n));
  Permutation best = candidate;
  double best_cost = expected_cost(candidate, avg_cost, selectivities);
  while (std::next_permutation(candidate.order.begin(), candidate.order.end())) {
    const double cost = expected_cost(candidate, avg_cost, selectivities);
    if (cost < best_cost) {
      best_cost = cost;
      best = candidate;
    }
  }
  return best;
}

}  // namespace sift
