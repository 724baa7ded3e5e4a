#include "sift/pipeline.hpp"

#include <chrono>
#include <thread>

namespace sift {

RankState::RankState(uint32_t worker_id, uint32_t num_predicates)
    : worker_id_(worker_id), num_predicates_(num_predicates) {
  if (num_predicates < 1) throw ConfigError("rank state needs at least one predicate");
  published_.push_back(std::make_unique<const Permutation>(Permutation::identity(num_predicates)));
  current_.store(published_.back().get(), std::memory_order_release);
}

// Scoped access to the fields behind the committer lock. The lock itself is
// taken (or not) by the caller.
class Committer {
 public:
  explicit Committer(RankState& state) : state_(state) {}

  const RankVector* previous_adj_ranks() const {
    return state_.adj_ranks_ ? &*state_.adj_ranks_ : nullptr;
  }

  void install(RankVector adj, Permutation perm, CommitRecord rec) {
    state_.adj_ranks_ = std::move(adj);
    auto owned = std::make_unique<const Permutation>(std::move(perm));
    state_.current_.store(owned.get(), std::memory_order_release);
    state_.published_.push_back(std::move(owned));
    state_.epoch_id_.fetch_add(1, std::memory_order_release);
    state_.trace_.push_back(std::move(rec));
  }

 private:
  RankState& state_;
};

TaskContext::TaskContext(uint32_t task_id_in, uint32_t num_predicates, OperatorMode mode_in,
                         AdaptiveConfig config_in, std::vector<uint64_t> segment_starts)
    : task_id(task_id_in),
      mode(std::move(mode_in)),
      config(config_in),
      stats(num_predicates),
      segment_starts_(std::move(segment_starts)) {
  config.validate();
  if (segment_starts_.empty()) segment_starts_ = {0};
  scratch.resize(num_predicates);
  segment_eval_counts.assign(segment_starts_.size(), std::vector<uint64_t>(num_predicates, 0));
  if (!mode.is_adaptive() && (!mode.fixed_order().is_valid() ||
                              mode.fixed_order().size() != num_predicates))
    throw ConfigError("static mode needs a valid permutation of all predicates");
}

CommitOutcome try_commit_epoch(TaskContext& ctx, RankState& state) {
  std::unique_lock<std::mutex> lock(state.committer_lock(), std::try_to_lock);
  if (!lock.owns_lock()) {
    // Another task is committing this epoch; keep the collected metrics and
    // retry at the next boundary.
    ++ctx.deferrals;
    return CommitOutcome::Deferred;
  }
  if (ctx.stats.monitored == 0) {
    ++ctx.skips;
    return CommitOutcome::SkippedNoSamples;
  }

  std::vector<double> s = compute_selectivities(ctx.stats);
  std::vector<double> nc = normalize_costs(ctx.stats);
  RankVector ranks = compute_ranks(nc, s);

  Committer committer(state);
  RankVector adj =
      update_adjusted_ranks(committer.previous_adj_ranks(), ranks, ctx.config.momentum.momentum);
  Permutation perm = sort_permutation(adj);

  CommitRecord rec;
  rec.worker_id = state.worker_id();
  rec.epoch_id = state.epoch_id() + 1;
  rec.task_id = ctx.task_id;
  rec.stream_pos = ctx.stream_pos;
  rec.monitored = ctx.stats.monitored;
  rec.selectivity = std::move(s);
  rec.norm_cost = std::move(nc);
  rec.adj_ranks = adj;
  rec.permutation = perm;
  committer.install(std::move(adj), std::move(perm), std::move(rec));

  lock.unlock();
  ctx.stats.reset();
  ++ctx.commits;
  return CommitOutcome::Committed;
}

bool process_record(TaskContext& ctx, RankState* state, const FilterQuery& query,
                    const Record& record) {
  const auto& predicates = query.predicates();
  const uint32_t n = static_cast<uint32_t>(predicates.size());
  auto& counts = ctx.eval_counts();
  const bool adaptive = ctx.mode.is_adaptive();
  bool pass;

  if (adaptive && should_monitor(ctx.row_index, ctx.config.monitor)) {
    evaluate_monitored(query, record, ctx.scratch);
    accumulate(ctx.stats, ctx.scratch);
    ++ctx.monitored_rows;
    pass = true;
    for (uint32_t i = 0; i < n; ++i) {
      ++counts[i];
      ctx.monitored_eval_nanos += ctx.scratch.eval_nanos[i];
      pass = pass && (ctx.scratch.pass_flags[i] != 0);
    }
  } else {
    const Permutation& perm = adaptive ? state->read_permutation() : ctx.mode.fixed_order();
    pass = true;
    for (uint32_t k = 0; k < n; ++k) {
      const uint32_t id = perm.order[k];
      ++counts[id];
      if (!predicates[id].matches(record)) {
        pass = false;
        break;
      }
    }
  }

  ctx.row_index += 1;
  if (adaptive) {
    ctx.stats.processed += 1;
    ctx.rows_since_commit_attempt += 1;
    if (ctx.rows_since_commit_attempt >= ctx.config.monitor.calculate_rate) {
      try_commit_epoch(ctx, *state);
      ctx.rows_since_commit_attempt = 0;
    }
  }
  return pass;
}

void RunConfig::validate(uint32_t num_predicates) const {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (tasks_per_worker < 1) throw ConfigError("tasks_per_worker must be >= 1");
  adaptive.validate();
  if (!mode.is_adaptive() && (!mode.fixed_order().is_valid() ||
                              mode.fixed_order().size() != num_predicates))
    throw ConfigError("static mode needs a valid permutation of all predicates");
  if (segment_starts.empty() || segment_starts.front() != 0)
    throw ConfigError("segment_starts must begin with row 0");
  for (size_t i = 1; i < segment_starts.size(); ++i) {
    if (segment_starts[i] <= segment_starts[i - 1])
      throw ConfigError("segment_starts must be strictly increasing");
  }
}

uint64_t RunReport::total_eval_count() const {
  uint64_t total = 0;
  for (const uint64_t c : eval_counts) total += c;
  return total;
}

uint64_t RunReport::segment_total(uint32_t segment) const {
  uint64_t total = 0;
  for (const uint64_t c : segment_eval_counts.at(segment)) total += c;
  return total;
}

namespace {

struct TaskResult {
  uint64_t rows_out = 0;
  std::vector<Record> outputs;
};

}  // namespace

RunReport run_partitioned(const FilterQuery& query, const std::vector<PartitionRef>& partitions,
                          const RunConfig& config) {
  config.validate(query.size());
  if (partitions.empty()) throw ConfigError("run needs at least one partition");
  for (const PartitionRef& p : partitions) {
    if (p.dataset == nullptr) throw ConfigError("partition without a dataset");
  }

  const uint32_t n = query.size();
  const uint32_t total_tasks = config.workers * config.tasks_per_worker;

  std::vector<std::unique_ptr<RankState>> states;
  states.reserve(config.workers);
  for (uint32_t w = 0; w < config.workers; ++w) {
    states.push_back(std::make_unique<RankState>(w, n));
  }

  std::vector<std::unique_ptr<TaskContext>> contexts(total_tasks);
  std::vector<TaskResult> results(total_tasks);
  std::atomic<size_t> next_partition{0};

  const auto task_body = [&](uint32_t worker, uint32_t task_id) {
    TaskContext& ctx = *contexts[task_id];
    TaskResult& result = results[task_id];
    RankState* state = config.mode.is_adaptive() ? states[worker].get() : nullptr;
    Record record;
    for (;;) {
      const size_t pi = next_partition.fetch_add(1, std::memory_order_relaxed);
      if (pi >= partitions.size()) break;
      const PartitionRef& part = partitions[pi];
      auto stream = part.open();
      uint64_t offset = 0;
      while (stream->next(record)) {
        ctx.stream_pos = part.first_row + offset;
        ctx.advance_segment();
        if (process_record(ctx, state, query, record)) {
          ++result.rows_out;
          if (config.collect_output) result.outputs.push_back(record);
        }
        ++offset;
      }
    }
  };

  for (uint32_t t = 0; t < total_tasks; ++t) {
    contexts[t] = std::make_unique<TaskContext>(t, n, config.mode, config.adaptive,
                                                config.segment_starts);
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> threads;
  threads.reserve(total_tasks);
  for (uint32_t w = 0; w < config.workers; ++w) {
    for (uint32_t t = 0; t < config.tasks_per_worker; ++t) {
      threads.emplace_back(task_body, w, w * config.tasks_per_worker + t);
    }
  }
  for (std::thread& th : threads) th.join();
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.label = config.label.empty() ? config.mode.label() : config.label;
  report.wall_nanos =
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  report.eval_counts.assign(n, 0);
  report.segment_eval_counts.assign(config.segment_starts.size(),
                                    std::vector<uint64_t>(n, 0));
  for (uint32_t t = 0; t < total_tasks; ++t) {
    const TaskContext& ctx = *contexts[t];
    report.rows_in += ctx.row_index;
    report.monitored_eval_nanos += ctx.monitored_eval_nanos;
    report.monitored_rows += ctx.monitored_rows;
    report.commits += ctx.commits;
    report.deferrals += ctx.deferrals;
    report.skips += ctx.skips;
    for (size_t seg = 0; seg < ctx.segment_eval_counts.size(); ++seg) {
      for (uint32_t i = 0; i < n; ++i) {
        report.segment_eval_counts[seg][i] += ctx.segment_eval_counts[seg][i];
        report.eval_counts[i] += ctx.segment_eval_counts[seg][i];
      }
    }
    report.rows_out += results[t].rows_out;
  }
  for (auto& state : states) {
    for (CommitRecord& rec : state->take_trace()) {
      report.commit_trace.push_back(std::move(rec));
    }
  }
  if (config.collect_output) {
    for (TaskResult& r : results) {
      for (Record& rec : r.outputs) report.outputs.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace sift
