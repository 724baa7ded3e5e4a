// Acceptance suite: end-to-end checks of the adaptive filter engine at desk
// scale. Each criterion prints one PASS/FAIL line; the exit code is the
// number of failures. Optionally pass criterion numbers to run a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sift/bench.hpp"

using namespace sift;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string name) : id_(id), name_(std::move(name)) {
    start_ = std::chrono::steady_clock::now();
  }

  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok_ = false;
      if (!why_.empty()) why_ += "; ";
      why_ += why;
    }
  }

  void note(const std::string& text) {
    if (!notes_.empty()) notes_ += ", ";
    notes_ += text;
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void finish() {
    const double secs = seconds();
    std::string label = "[" + std::to_string(id_) + "] " + name_ + " ";
    label.append(label.size() < 60 ? 60 - label.size() : 1, '.');
    std::printf("%s %s  (%.1fs)", label.c_str(), ok_ ? "PASS" : "FAIL", secs);
    if (!notes_.empty()) std::printf("  [%s]", notes_.c_str());
    if (!ok_) std::printf("  <- %s", why_.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!ok_) ++g_failures;
  }

  void fail_exception(const std::string& what) {
    ok_ = false;
    why_ = "exception: " + what;
  }

 private:
  int id_;
  std::string name_;
  bool ok_ = true;
  std::string why_;
  std::string notes_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::vector<std::string> canonical(const std::vector<Record>& rows) {
  std::vector<std::string> keys;
  keys.reserve(rows.size());
  for (const Record& r : rows) {
    std::string key;
    for (const Value& v : r) {
      key += v.to_string();
      key += '\x1f';
    }
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<Record> naive_filter(const FilterQuery& q, const Dataset& ds) {
  std::vector<Record> out;
  auto stream = ds.scan_all();
  Record rec;
  while (stream->next(rec)) {
    if (naive_conjunction(q, rec)) out.push_back(rec);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared experiment material: a three-attribute dataset (date, integer, text)
// with four filters, two of them on the integer attribute. Pass fractions
// multiply to ~4.51% overall; busy-work padding makes per-predicate costs
// rise with selectivity so the cheap-and-selective order is unambiguous.
// ---------------------------------------------------------------------------

DatasetSpec stationary_spec(uint64_t rows, uint64_t seed) {
  DatasetSpec spec;
  spec.seed = seed;
  Segment seg;
  seg.row_count = rows;
  seg.columns = {{"ts", ValueKind::Date, 120.0, 1000.0},
                 {"load", ValueKind::Integer, 500.0, 1000.0},
                 {"host", ValueKind::Text, 50000.0, 1000.0}};
  spec.segments.push_back(seg);
  return spec;
}

// Predicates in statement order; `optimal_first` writes the rank-optimal
// order into the statement itself (for the overhead criterion), otherwise
// the statement starts with mid-quality predicates.
FilterQuery sweep_query(const DatasetSpec& spec, bool optimal_first) {
  const ThresholdTarget host{2, Comparator::Gt, 0.5784, 48};
  const ThresholdTarget ts{0, Comparator::Gt, 0.65, 96};
  const ThresholdTarget load{1, Comparator::Gt, 0.12, 0};
  const std::vector<ThresholdTarget> targets =
      optimal_first ? std::vector<ThresholdTarget>{load, host, ts}
                    : std::vector<ThresholdTarget>{host, ts, load};
  FilterQuery base = derive_thresholds(targets, spec);
  std::vector<Predicate> preds = base.predicates();
  // Second filter on the integer attribute: a near-free-pass inequality.
  preds.push_back(Predicate{1, Comparator::Ne, Value::integer(500), 144});
  return FilterQuery(spec.schema(), std::move(preds));
}

ExperimentSpec desk_spec(const Dataset& ds, const FilterQuery& q) {
  ExperimentSpec spec{&ds, q};
  spec.workers = 1;
  spec.tasks_per_worker = 4;
  spec.partition_size = 250000;
  spec.monitor = {1000, 100000};
  spec.momentum = {0.3};
  spec.repetitions = 1;
  return spec;
}

// Drift material: the most selective predicate swaps columns at the segment
// boundary (load passes 10% -> 90%, host 90% -> 10%), the date predicate
// stays at 62%, and the second integer filter passes nearly everything.
struct DriftSetup {
  DatasetSpec spec;
  FilterQuery query;

  DriftSetup(uint64_t rows_per_segment, uint64_t seed) : query(make(rows_per_segment, seed, spec)) {}

 private:
  static FilterQuery make(uint64_t rows_per_segment, uint64_t seed, DatasetSpec& out_spec) {
    DatasetSpec spec;
    spec.seed = seed;
    Segment seg1;
    seg1.row_count = rows_per_segment;
    seg1.columns = {{"ts", ValueKind::Date, 0.0, 1000.0},
                    {"load", ValueKind::Integer, 0.0, 1000.0},
                    {"host", ValueKind::Text, 50000.0, 1000.0}};
    spec.segments.push_back(seg1);

    const std::vector<ThresholdTarget> targets{{1, Comparator::Gt, 0.10, 64},
                                               {2, Comparator::Gt, 0.90, 64},
                                               {0, Comparator::Gt, 0.62, 64}};
    FilterQuery base = derive_thresholds(targets, spec);
    std::vector<Predicate> preds = base.predicates();
    preds.push_back(Predicate{1, Comparator::Ne, Value::integer(0), 64});
    FilterQuery query(spec.schema(), std::move(preds));

    // Segment 2 slides the integer and text means so the pass fractions of
    // the two swap predicates trade places around the fixed thresholds.
    Segment seg2 = seg1;
    const double t_load = static_cast<double>(query.predicates()[0].threshold.as_int());
    seg2.columns[1].mean = (t_load + 0.5) + 1000.0 * normal_quantile(0.90);
    const double t_host = std::stod(query.predicates()[1].threshold.as_text());
    seg2.columns[2].mean = (t_host + 0.5) - 1000.0 * normal_quantile(0.90);
    spec.segments.push_back(seg2);

    out_spec = std::move(spec);
    return query;
  }
};

// ---------------------------------------------------------------------------

void criterion1() {
  Criterion c(1, "rank-ordering optimality vs exhaustive search");
  try {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> cost_dist(0.01, 10.0);
    std::uniform_real_distribution<double> sel_dist(0.0, 0.999);
    double max_gap = 0.0;
    const int instances = 1000;
    for (int trial = 0; trial < instances; ++trial) {
      const uint32_t n = 2 + static_cast<uint32_t>(rng() % 5);  // 2..6
      std::vector<double> avg(n), s(n);
      double max_avg = 0.0;
      for (uint32_t i = 0; i < n; ++i) {
        avg[i] = cost_dist(rng);
        s[i] = sel_dist(rng);
        max_avg = std::max(max_avg, avg[i]);
      }
      std::vector<double> nc(n);
      for (uint32_t i = 0; i < n; ++i) nc[i] = avg[i] / max_avg;
      const double by_rank = expected_cost(sort_permutation(compute_ranks(nc, s)), avg, s);
      const double by_search = expected_cost(brute_force_best(avg, s), avg, s);
      max_gap = std::max(max_gap, std::abs(by_rank - by_search));
    }
    c.require(max_gap <= 1e-9, fmt("max |cost gap| %.3g > 1e-9", max_gap));
    c.note(fmt("%d instances, max gap %.2g", instances, max_gap));
    c.require(c.seconds() < 10.0, fmt("took %.1fs >= 10s", c.seconds()));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion2() {
  Criterion c(2, "semantic transparency across random configurations");
  try {
    std::mt19937 rng(987654);
    const ValueKind kinds[] = {ValueKind::Integer, ValueKind::Date, ValueKind::Text};
    const Comparator comparators[] = {Comparator::Lt, Comparator::Le, Comparator::Gt,
                                      Comparator::Ge, Comparator::Eq, Comparator::Ne};
    const uint64_t collect_rates[] = {1, 7, 100, 1000};
    const uint64_t calculate_rates[] = {500, 5000, 50000};
    const double momenta[] = {0.0, 0.3, 1.0};
    const uint64_t partition_sizes[] = {997, 10000, 50000};

    const int combos = 100;
    int checked = 0;
    for (int trial = 0; trial < combos; ++trial) {
      DatasetSpec dspec;
      dspec.seed = rng();
      const uint32_t num_cols = 1 + rng() % 4;
      const uint32_t num_segments = 1 + rng() % 3;
      std::uniform_real_distribution<double> mean_dist(100.0, 5000.0);
      std::uniform_real_distribution<double> sd_dist(20.0, 400.0);
      std::vector<ColumnSpec> cols;
      for (uint32_t i = 0; i < num_cols; ++i) {
        cols.push_back(
            {"c" + std::to_string(i), kinds[rng() % 3], mean_dist(rng), sd_dist(rng)});
      }
      uint64_t total_rows = 0;
      for (uint32_t s = 0; s < num_segments; ++s) {
        Segment seg;
        seg.row_count = 1000 + rng() % 33000;  // dataset stays under 100k rows
        total_rows += seg.row_count;
        seg.columns = cols;
        for (ColumnSpec& col : seg.columns) col.mean += (rng() % 5) * sd_dist(rng);
        dspec.segments.push_back(seg);
      }
      const GeneratedDataset ds(dspec);

      const uint32_t num_preds = 1 + rng() % 5;
      std::vector<Predicate> preds;
      for (uint32_t p = 0; p < num_preds; ++p) {
        const uint32_t col = rng() % num_cols;
        const ColumnSpec& cs = dspec.segments[0].columns[col];
        std::uniform_real_distribution<double> z(-2.5, 2.5);
        const double x = cs.mean + cs.stddev * z(rng);
        Value threshold;
        switch (cs.kind) {
          case ValueKind::Integer:
            threshold = Value::integer(std::llround(x));
            break;
          case ValueKind::Date:
            threshold = Value::date(kDateBaseDays + std::llround(x));
            break;
          default: {
            char buf[32];
            const long long v = std::llround(std::max(0.0, x));
            std::snprintf(buf, sizeof(buf), "%0*lld", kTextPadWidth, v);
            threshold = Value::text(buf);
            break;
          }
        }
        preds.push_back({col, comparators[rng() % 6], std::move(threshold),
                         static_cast<uint32_t>(rng() % 40)});
      }
      const FilterQuery query(ds.schema(), std::move(preds));

      RunConfig cfg;
      cfg.mode = OperatorMode::adaptive();
      cfg.workers = 1 + rng() % 2;
      cfg.tasks_per_worker = (rng() % 2) ? 1 : 4;
      cfg.adaptive = {{collect_rates[rng() % 4], calculate_rates[rng() % 3]},
                      {momenta[rng() % 3]}};
      cfg.collect_output = true;
      const auto parts = partition(ds, partition_sizes[rng() % 3]);

      const RunReport report = run_partitioned(query, parts, cfg);
      const auto expected = canonical(naive_filter(query, ds));
      const auto actual = canonical(report.outputs);
      if (actual != expected || report.rows_in != total_rows) {
        c.require(false, fmt("combo %d diverged (rows_out %llu vs %zu)", trial,
                             static_cast<unsigned long long>(report.rows_out),
                             expected.size()));
        break;
      }
      ++checked;
    }
    c.note(fmt("%d combos, exact multiset match", checked));
    c.require(c.seconds() < 60.0, fmt("took %.1fs >= 60s", c.seconds()));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion3() {
  Criterion c(3, "all-permutations sweep: spread >= 2x, adaptive near best");
  try {
    const DatasetSpec dspec = stationary_spec(5000000, 20260809);
    const GeneratedDataset ds(dspec);
    const FilterQuery query = sweep_query(dspec, /*optimal_first=*/false);
    const ExperimentSpec spec = desk_spec(ds, query);

    const SweepResult sweep = sweep_permutations(spec);
    const SweepRow& adaptive = sweep.rows.front();
    uint64_t best = UINT64_MAX, worst = 0;
    for (size_t i = 1; i < sweep.rows.size(); ++i) {
      best = std::min(best, sweep.rows[i].total_eval_count);
      worst = std::max(worst, sweep.rows[i].total_eval_count);
    }
    const double spread = static_cast<double>(worst) / static_cast<double>(best);
    const double vs_best =
        static_cast<double>(adaptive.total_eval_count) / static_cast<double>(best);
    const double overall = static_cast<double>(adaptive.rows_out) / 5000000.0;

    c.require(sweep.rows.size() == 25, fmt("expected 25 rows, got %zu", sweep.rows.size()));
    c.require(std::abs(overall - 0.0451) <= 0.004,
              fmt("overall selectivity %.4f not ~4.51%%", overall));
    c.require(spread >= 2.0, fmt("static spread %.2fx < 2.0x", spread));
    c.require(vs_best <= 1.15, fmt("adaptive %.3fx of best static > 1.15x", vs_best));
    for (const SweepRow& row : sweep.rows) {
      c.require(row.rows_out == adaptive.rows_out, "rows_out differs across modes");
    }
    c.note(fmt("spread %.2fx, adaptive %.3fx best, overall %.2f%%", spread, vs_best,
               overall * 100.0));
    c.require(c.seconds() < 300.0, fmt("took %.1fs >= 300s", c.seconds()));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion4() {
  Criterion c(4, "low overhead on stationary, already-optimal order");
  try {
    const DatasetSpec dspec = stationary_spec(2000000, 777001);
    const GeneratedDataset ds(dspec);
    const FilterQuery query = sweep_query(dspec, /*optimal_first=*/true);
    ExperimentSpec spec = desk_spec(ds, query);
    spec.repetitions = 5;
    const uint32_t n = query.size();

    const RunReport adaptive = run_experiment_median(spec, OperatorMode::adaptive());
    const RunReport fixed =
        run_experiment_median(spec, OperatorMode::static_order(Permutation::identity(n)));

    const double eval_ratio = static_cast<double>(adaptive.total_eval_count()) /
                              static_cast<double>(fixed.total_eval_count());
    const double wall_ratio =
        static_cast<double>(adaptive.wall_nanos) / static_cast<double>(fixed.wall_nanos);

    // Sampling adds at most (n - 1) extra evaluations per monitored row.
    const uint64_t bound = fixed.total_eval_count() + adaptive.monitored_rows * (n - 1);
    c.require(adaptive.total_eval_count() <= bound,
              fmt("adaptive evals %llu exceed sampling bound %llu",
                  static_cast<unsigned long long>(adaptive.total_eval_count()),
                  static_cast<unsigned long long>(bound)));
    c.require(eval_ratio <= 1.02, fmt("eval ratio %.4f > 1.02", eval_ratio));
    c.require(wall_ratio <= 1.10, fmt("wall ratio %.3f > 1.10 (median of 5)", wall_ratio));
    c.note(fmt("eval ratio %.4f, wall ratio %.3f", eval_ratio, wall_ratio));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion5() {
  Criterion c(5, "drift response: oracle adopted fast, beats every static");
  try {
    const DriftSetup setup(2500000, 31415);
    const GeneratedDataset ds(setup.spec);
    const ExperimentSpec spec = desk_spec(ds, setup.query);

    const DriftResult drift = drift_experiment(spec, setup.spec);
    c.require(drift.rows.size() == 25, fmt("expected 25 rows, got %zu", drift.rows.size()));

    // The engineered swap shows up in the measured per-segment stats.
    const auto& profiles = drift.segment_profiles;
    c.require(profiles[0].oracle_order.order.front() == 0,
              "segment-1 oracle should start with the load predicate");
    c.require(profiles[1].oracle_order.order.front() == 1,
              "segment-2 oracle should start with the host predicate");

    c.require(drift.boundary_epoch.has_value(), "no commit after the boundary");
    c.require(drift.adoption_epoch.has_value(), "segment-2 oracle order never adopted");
    if (drift.boundary_epoch && drift.adoption_epoch) {
      c.require(*drift.adoption_epoch <= *drift.boundary_epoch + 2,
                fmt("adopted at epoch %llu, boundary epoch %llu (> 3 epochs)",
                    static_cast<unsigned long long>(*drift.adoption_epoch),
                    static_cast<unsigned long long>(*drift.boundary_epoch)));
    }

    const uint64_t adaptive_count = drift.rows.front().total_eval_count;
    uint64_t best_static = UINT64_MAX;
    bool beats_all = true;
    for (size_t i = 1; i < drift.rows.size(); ++i) {
      best_static = std::min(best_static, drift.rows[i].total_eval_count);
      beats_all = beats_all && adaptive_count < drift.rows[i].total_eval_count;
    }
    c.require(beats_all, "some static ordering matched or beat adaptive");
    if (drift.boundary_epoch && drift.adoption_epoch) {
      c.note(fmt("adaptive %.3fx of best static, adopted %llu epoch(s) after boundary",
                 static_cast<double>(adaptive_count) / static_cast<double>(best_static),
                 static_cast<unsigned long long>(*drift.adoption_epoch -
                                                 *drift.boundary_epoch)));
    }
    c.require(c.seconds() < 300.0, fmt("took %.1fs >= 300s", c.seconds()));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion6() {
  Criterion c(6, "sensitivity: extreme parameter values degrade performance");
  try {
    const DriftSetup setup(2500000, 59265);
    const GeneratedDataset ds(setup.spec);
    const ExperimentSpec spec = desk_spec(ds, setup.query);

    // calculateRate = total rows: the order never adapts.
    ExperimentSpec frozen_rate = spec;
    frozen_rate.monitor.calculate_rate = ds.row_count();
    const uint64_t never_adapts =
        run_experiment(frozen_rate, OperatorMode::adaptive()).total_eval_count();
    const uint64_t default_count =
        run_experiment(spec, OperatorMode::adaptive()).total_eval_count();
    c.require(never_adapts > default_count,
              fmt("calculateRate=total evals %llu not above default %llu",
                  static_cast<unsigned long long>(never_adapts),
                  static_cast<unsigned long long>(default_count)));

    // collectRate = 1 monitors every row; wall time must suffer.
    ExperimentSpec eager = spec;
    eager.monitor.collect_rate = 1;
    eager.repetitions = 5;
    ExperimentSpec defaults = spec;
    defaults.repetitions = 5;
    const uint64_t eager_wall =
        run_experiment_median(eager, OperatorMode::adaptive()).wall_nanos;
    const uint64_t default_wall =
        run_experiment_median(defaults, OperatorMode::adaptive()).wall_nanos;
    c.require(eager_wall > default_wall,
              fmt("collectRate=1 wall %.0fms not above collectRate=1000 wall %.0fms",
                  eager_wall / 1e6, default_wall / 1e6));

    // momentum = 1 freezes the first computed order across the drift.
    ExperimentSpec frozen_rank = spec;
    frozen_rank.momentum = {1.0};
    const uint64_t frozen_count =
        run_experiment(frozen_rank, OperatorMode::adaptive()).total_eval_count();
    c.require(frozen_count > default_count,
              fmt("momentum=1 evals %llu not above momentum=0.3 evals %llu",
                  static_cast<unsigned long long>(frozen_count),
                  static_cast<unsigned long long>(default_count)));

    c.note(fmt("never-adapt +%.0f%%, collect=1 wall +%.0f%%, momentum=1 +%.0f%%",
               100.0 * (static_cast<double>(never_adapts) / default_count - 1.0),
               100.0 * (static_cast<double>(eager_wall) / default_wall - 1.0),
               100.0 * (static_cast<double>(frozen_count) / default_count - 1.0)));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion7() {
  Criterion c(7, "concurrency invariants under 8-task contention");
  try {
    DatasetSpec dspec;
    dspec.seed = 141421;
    Segment seg;
    seg.row_count = 2000000;
    seg.columns = {{"a", ValueKind::Integer, 0.0, 1000.0},
                   {"b", ValueKind::Integer, 0.0, 1000.0}};
    dspec.segments.push_back(seg);
    const GeneratedDataset ds(dspec);
    const FilterQuery query(ds.schema(),
                            {Predicate{0, Comparator::Gt, Value::integer(-400), 0},
                             Predicate{1, Comparator::Gt, Value::integer(600), 0}});

    uint64_t total_deferred = 0;
    uint64_t total_commits = 0;
    std::atomic<uint64_t> torn_reads{0};
    std::atomic<uint64_t> stats_violations{0};
    bool traces_ok = true;

    for (int run = 0; run < 10; ++run) {
      RankState state(0, query.size());
      const auto parts = partition(ds, 50000);
      std::atomic<size_t> next{0};
      std::atomic<uint64_t> deferred{0};
      constexpr int kTasks = 8;
      std::vector<std::thread> tasks;
      for (int t = 0; t < kTasks; ++t) {
        tasks.emplace_back([&, t] {
          TaskContext ctx(static_cast<uint32_t>(t), query.size(), OperatorMode::adaptive(),
                          AdaptiveConfig{MonitorConfig{1000, 10000}, MomentumConfig{0.3}});
          Record rec;
          uint64_t last_monitored = 0;
          for (;;) {
            const size_t pi = next.fetch_add(1, std::memory_order_relaxed);
            if (pi >= parts.size()) break;
            auto stream = parts[pi].open();
            uint64_t offset = 0;
            while (stream->next(rec)) {
              ctx.stream_pos = parts[pi].first_row + offset;
              // Every read must observe a complete permutation.
              const Permutation& seen = state.read_permutation();
              if (!seen.is_valid() || seen.size() != query.size()) torn_reads.fetch_add(1);
              process_record(ctx, &state, query, rec);
              // Samples only ever grow, except through the task's own commit.
              if (ctx.stats.monitored != 0 && ctx.stats.monitored < last_monitored)
                stats_violations.fetch_add(1);
              last_monitored = ctx.stats.monitored;
              ++offset;
            }
          }
          deferred.fetch_add(ctx.deferrals);
        });
      }
      for (std::thread& th : tasks) th.join();

      uint64_t expected_epoch = 1;
      for (const CommitRecord& rec : state.trace()) {
        if (rec.epoch_id != expected_epoch || !rec.permutation.is_valid()) {
          traces_ok = false;
          break;
        }
        ++expected_epoch;
      }
      total_commits += state.trace().size();
      total_deferred += deferred.load();
    }

    c.require(traces_ok, "epoch ids not strictly increasing and gap-free");
    c.require(torn_reads.load() == 0,
              fmt("%llu torn reads", static_cast<unsigned long long>(torn_reads.load())));
    c.require(stats_violations.load() == 0, "deferred stats lost samples");
    c.require(total_deferred >= 1, "contention never produced a Deferred outcome");
    c.require(total_commits > 0, "no commits at all");
    c.note(fmt("10 runs, %llu commits, %llu deferrals",
               static_cast<unsigned long long>(total_commits),
               static_cast<unsigned long long>(total_deferred)));
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

void criterion8() {
  Criterion c(8, "momentum, clamp, normalization, and tie-break identities");
  try {
    const RankVector prev{5.0, 5.0};
    const RankVector current{1.0, 2.0};
    c.require(update_adjusted_ranks(&prev, current, 0.0) == current, "m=0 identity broken");
    c.require(update_adjusted_ranks(&prev, current, 1.0) == prev, "m=1 identity broken");
    c.require(update_adjusted_ranks(nullptr, current, 0.9) == current,
              "first-commit pass-through broken");

    const RankVector clamped =
        compute_ranks(std::vector<double>{0.5}, std::vector<double>{1.0});
    c.require(std::abs(clamped[0] - 5.0e5) < 1e-6, "s=1 clamp is not nc/1e-6");

    EpochStats zero_cost(3);
    zero_cost.monitored = 10;
    c.require(normalize_costs(zero_cost) == std::vector<double>{1.0, 1.0, 1.0},
              "all-zero costs must normalize to all ones");

    c.require(sort_permutation({1.0, 1.0, 0.5}).order == std::vector<uint32_t>{2, 0, 1},
              "ties must break by ascending predicate id");
    c.require(sort_permutation({2.4, 0.3, 1.0}).order == std::vector<uint32_t>{1, 2, 0},
              "ascending rank sort broken");
  } catch (const std::exception& e) {
    c.fail_exception(e.what());
  }
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  const auto want = [&](int id) { return selected.empty() || selected.count(id) > 0; };

  if (want(1)) criterion1();
  if (want(2)) criterion2();
  if (want(3)) criterion3();
  if (want(4)) criterion4();
  if (want(5)) criterion5();
  if (want(6)) criterion6();
  if (want(7)) criterion7();
  if (want(8)) criterion8();

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) FAILED\n", g_failures);
  }
  return g_failures;
}
