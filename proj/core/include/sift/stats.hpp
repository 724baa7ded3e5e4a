#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sift/query.hpp"

namespace sift {

struct MonitorConfig {
  uint64_t collect_rate = 1000;       // one monitored row per collect_rate rows
  uint64_t calculate_rate = 1000000;  // rows per epoch

  void validate() const {
    if (collect_rate < 1) throw ConfigError("collect_rate must be >= 1");
    if (calculate_rate < 1) throw ConfigError("calculate_rate must be >= 1");
  }
};

/// Verdict and per-predicate timing of one fully monitored row.
struct MonitoredOutcome {
  std::vector<char> pass_flags;       // 1 iff predicate i passed
  std::vector<uint64_t> eval_nanos;   // time spent evaluating predicate i

  void resize(uint32_t n) {
    pass_flags.assign(n, 0);
    eval_nanos.assign(n, 0);
  }
  bool all_passed() const {
    for (const char f : pass_flags)
      if (!f) return false;
    return true;
  }
};

/// Task-local accumulators for one epoch, indexed by predicate id in user
/// order. Single-owner; never shared between tasks.
struct EpochStats {
  std::vector<uint64_t> num_cut;      // rows that did not satisfy predicate i
  std::vector<uint64_t> cost_nanos;   // total evaluation time of predicate i
  uint64_t monitored = 0;             // sampled rows this epoch
  uint64_t processed = 0;             // all rows seen this epoch

  EpochStats() = default;
  explicit EpochStats(uint32_t n) : num_cut(n, 0), cost_nanos(n, 0) {}

  void reset() {
    std::fill(num_cut.begin(), num_cut.end(), 0);
    std::fill(cost_nanos.begin(), cost_nanos.end(), 0);
    monitored = 0;
    processed = 0;
  }
};

/// Systematic sampling: the task-local row counter selects every
/// collect_rate-th row, starting with row 0. No random source.
inline bool should_monitor(uint64_t task_row_index, const MonitorConfig& config) {
  return task_row_index % config.collect_rate == 0;
}

/// Evaluates every predicate in user order, regardless of failures, timing
/// each one with the monotonic clock. n+1 timestamps: one before the first
/// predicate, one after each, so timing covers only predicate evaluation.
void evaluate_monitored(const FilterQuery& query, const Record& record, MonitoredOutcome& out);

/// Folds one monitored outcome into the epoch accumulators.
void accumulate(EpochStats& stats, const MonitoredOutcome& outcome);

}  // namespace sift
