#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sift/stats.hpp"

namespace sift {

/// Per-predicate rank values, indexed by predicate id.
using RankVector = std::vector<double>;

/// The order in which predicates run on non-monitored rows; a bijection on
/// {0..n-1}. Position k holds the id of the k-th predicate to evaluate.
struct Permutation {
  std::vector<uint32_t> order;

  static Permutation identity(uint32_t n);
  uint32_t size() const { return static_cast<uint32_t>(order.size()); }
  bool is_valid() const;
  bool operator==(const Permutation&) const = default;
  std::string to_string(char sep = ',') const;
};

struct MomentumConfig {
  double momentum = 0.3;  // fraction of the previous adjusted rank preserved

  void validate() const {
    if (!(momentum >= 0.0 && momentum <= 1.0))
      throw ConfigError("momentum must be in [0, 1]");
  }
};

/// Clamp on (1 - s) so always-true predicates get a huge finite rank and
/// sort last instead of dividing by zero.
inline constexpr double kRankEpsilon = 1e-6;

/// s[i] = fraction of monitored rows satisfying predicate i. Throws
/// NoSamples when the epoch monitored nothing.
std::vector<double> compute_selectivities(const EpochStats& stats);

/// Average per-row costs scaled into [0,1] by the maximum average. When all
/// averages are zero (below clock resolution) every entry becomes 1 and the
/// ordering is driven purely by selectivity. Throws NoSamples.
std::vector<double> normalize_costs(const EpochStats& stats);

/// rank[i] = nc[i] / max(1 - s[i], kRankEpsilon).
RankVector compute_ranks(std::span<const double> norm_costs,
                         std::span<const double> selectivities);

/// First-order difference equation: (1-m)*current + m*previous. With no
/// previous vector (first commit ever) the current ranks pass through.
RankVector update_adjusted_ranks(const RankVector* previous, const RankVector& current,
                                 double momentum);

/// Ids sorted by ascending adjusted rank; ties fall back to ascending id,
/// preserving the user-given order.
Permutation sort_permutation(const RankVector& adj_ranks);

/// Expected per-row evaluation cost of a short-circuiting order:
/// sum_k cost[perm[k]] * prod_{j<k} s[perm[j]].
double expected_cost(const Permutation& perm, std::span<const double> avg_cost,
                     std::span<const double> selectivities);

/// Exhaustive minimizer of expected_cost; ties resolve to the
/// lexicographically smallest order. Test-scale only: refuses n > 8.
Permutation brute_force_best(std::span<const double> avg_cost,
                             std::span<const double> selectivities);

}  // namespace sift
