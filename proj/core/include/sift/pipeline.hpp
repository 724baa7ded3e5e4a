#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sift/dataset.hpp"
#include "sift/rank.hpp"

namespace sift {

struct AdaptiveConfig {
  MonitorConfig monitor;
  MomentumConfig momentum;

  void validate() const {
    monitor.validate();
    momentum.validate();
  }
};

/// One rank recalculation, as recorded in the commit trace.
struct CommitRecord {
  uint32_t worker_id = 0;
  uint64_t epoch_id = 0;
  uint32_t task_id = 0;
  uint64_t stream_pos = 0;  // global row the committing task had reached
  uint64_t monitored = 0;
  std::vector<double> selectivity;
  std::vector<double> norm_cost;
  RankVector adj_ranks;
  Permutation permutation;
};

class TaskContext;

/// Rank state shared by the tasks of one worker. The permutation is
/// published by swapping an atomic pointer to an immutable snapshot, so
/// reads are wait-free and never torn; superseded snapshots stay alive
/// until the state is destroyed. Rank updates are serialized by a
/// committer lock that is only ever try-locked: contenders defer instead
/// of waiting.
class RankState {
 public:
  RankState(uint32_t worker_id, uint32_t num_predicates);

  /// Wait-free snapshot; may lag the most recent commit, never torn. The
  /// reference stays valid for the lifetime of this state.
  const Permutation& read_permutation() const {
    return *current_.load(std::memory_order_acquire);
  }

  uint32_t worker_id() const { return worker_id_; }
  uint64_t epoch_id() const { return epoch_id_.load(std::memory_order_acquire); }
  uint32_t num_predicates() const { return num_predicates_; }

  /// The single-committer lock. Intended for try_lock only; exposed so
  /// contention can be produced deterministically in tests.
  std::mutex& committer_lock() { return committer_; }

  /// Commit history, ordered by epoch. Call only while no task is running.
  const std::vector<CommitRecord>& trace() const { return trace_; }
  std::vector<CommitRecord> take_trace() { return std::move(trace_); }

 private:
  friend class Committer;

  uint32_t worker_id_;
  uint32_t num_predicates_;
  std::mutex committer_;
  std::vector<std::unique_ptr<const Permutation>> published_;  // guarded by committer_
  std::optional<RankVector> adj_ranks_;                        // guarded by committer_
  std::vector<CommitRecord> trace_;                            // guarded by committer_
  std::atomic<const Permutation*> current_;
  std::atomic<uint64_t> epoch_id_{0};
};

enum class CommitOutcome { Committed, Deferred, SkippedNoSamples };

class OperatorMode {
 public:
  static OperatorMode adaptive() { return OperatorMode{}; }
  static OperatorMode static_order(Permutation order) {
    OperatorMode m;
    m.fixed_ = std::move(order);
    return m;
  }

  bool is_adaptive() const { return !fixed_.has_value(); }
  const Permutation& fixed_order() const { return *fixed_; }
  std::string label() const {
    return is_adaptive() ? "adaptive" : "static:" + fixed_->to_string('-');
  }

 private:
  std::optional<Permutation> fixed_;
};

/// Per-task mutable state: row counters, epoch statistics, evaluation
/// accounting. Single-owner; one per task, for the task's whole life.
class TaskContext {
 public:
  TaskContext(uint32_t task_id, uint32_t num_predicates, OperatorMode mode,
              AdaptiveConfig config, std::vector<uint64_t> segment_starts = {0});

  uint32_t task_id = 0;
  OperatorMode mode;
  AdaptiveConfig config;

  uint64_t row_index = 0;                 // rows this task has ever processed
  uint64_t rows_since_commit_attempt = 0;
  EpochStats stats;
  MonitoredOutcome scratch;

  // Reporting.
  uint64_t stream_pos = 0;  // global row index of the record in flight
  std::vector<std::vector<uint64_t>> segment_eval_counts;  // [segment][predicate]
  uint64_t monitored_rows = 0;
  uint64_t monitored_eval_nanos = 0;
  uint64_t commits = 0;
  uint64_t deferrals = 0;
  uint64_t skips = 0;

  /// Call when stream_pos moves; keeps the active segment current.
  void advance_segment() {
    while (segment_ + 1 < segment_starts_.size() && stream_pos >= segment_starts_[segment_ + 1])
      ++segment_;
  }
  uint32_t current_segment() const { return segment_; }
  std::vector<uint64_t>& eval_counts() { return segment_eval_counts[segment_]; }

 private:
  std::vector<uint64_t> segment_starts_;
  uint32_t segment_ = 0;
};

/// Recalculates ranks from the task's epoch stats and publishes a new
/// permutation, unless another task holds the committer lock (Deferred:
/// stats are retained and keep accumulating) or nothing was monitored
/// (SkippedNoSamples: permutation unchanged). Only a Committed outcome
/// resets the task's stats.
CommitOutcome try_commit_epoch(TaskContext& ctx, RankState& state);

/// Runs one record through the operator. Monitored rows evaluate every
/// predicate in user order, timed; other rows evaluate in the current
/// permutation order with short-circuit on first failure. Returns the
/// conjunction verdict, which always equals naive_conjunction.
bool process_record(TaskContext& ctx, RankState* state, const FilterQuery& query,
                    const Record& record);

struct RunConfig {
  OperatorMode mode = OperatorMode::adaptive();
  uint32_t workers = 1;
  uint32_t tasks_per_worker = 1;
  AdaptiveConfig adaptive;
  std::vector<uint64_t> segment_starts = {0};  // eval-count attribution buckets
  bool collect_output = false;                 // keep passing records in the report
  std::string label;                           // defaults to mode label

  void validate(uint32_t num_predicates) const;
};

struct RunReport {
  std::string label;
  uint64_t wall_nanos = 0;
  uint64_t rows_in = 0;
  uint64_t rows_out = 0;
  std::vector<uint64_t> eval_counts;                       // per predicate id
  std::vector<std::vector<uint64_t>> segment_eval_counts;  // [segment][predicate]
  uint64_t monitored_rows = 0;
  uint64_t monitored_eval_nanos = 0;
  uint64_t commits = 0;
  uint64_t deferrals = 0;
  uint64_t skips = 0;
  std::vector<CommitRecord> commit_trace;  // grouped by worker, epoch order
  std::vector<Record> outputs;             // filled when collect_output

  uint64_t total_eval_count() const;
  uint64_t segment_total(uint32_t segment) const;
};

/// Spawns `workers` independent RankStates, each driven by
/// `tasks_per_worker` concurrent tasks; all tasks pull partitions from one
/// shared queue. Workers share nothing with each other.
RunReport run_partitioned(const FilterQuery& query, const std::vector<PartitionRef>& partitions,
                          const RunConfig& config);

}  // namespace sift
