#include "sift/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace sift {

namespace {

uint64_t median_u64(std::vector<uint64_t> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n == 0) return 0;
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (const double v : values) {
    if (!out.empty()) out += '|';
    out += format_double(v);
  }
  return out;
}

std::vector<Permutation> all_permutations(uint32_t n) {
  Permutation p = Permutation::identity(n);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.order.begin(), p.order.end()));
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (dataset == nullptr) throw ConfigError("experiment needs a dataset");
  if (partition_size < 1) throw ConfigError("partition_size must be >= 1");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  monitor.validate();
  momentum.validate();
  if (workers < 1 || tasks_per_worker < 1)
    throw ConfigError("workers and tasks_per_worker must be >= 1");
}

RunConfig ExperimentSpec::run_config(OperatorMode mode) const {
  RunConfig cfg;
  cfg.mode = std::move(mode);
  cfg.workers = workers;
  cfg.tasks_per_worker = tasks_per_worker;
  cfg.adaptive.monitor = monitor;
  cfg.adaptive.momentum = momentum;
  cfg.segment_starts = segment_starts;
  return cfg;
}

RunReport run_experiment(const ExperimentSpec& spec, OperatorMode mode) {
  spec.validate();
  const auto parts = partition(*spec.dataset, spec.partition_size);
  return run_partitioned(spec.query, parts, spec.run_config(std::move(mode)));
}

RunReport run_experiment_median(const ExperimentSpec& spec, OperatorMode mode) {
  spec.validate();
  const auto parts = partition(*spec.dataset, spec.partition_size);
  const RunConfig cfg = spec.run_config(std::move(mode));
  RunReport first = run_partitioned(spec.query, parts, cfg);
  std::vector<uint64_t> walls{first.wall_nanos};
  for (uint32_t r = 1; r < spec.repetitions; ++r) {
    walls.push_back(run_partitioned(spec.query, parts, cfg).wall_nanos);
  }
  first.wall_nanos = median_u64(std::move(walls));
  return first;
}

void SweepResult::write_csv(std::ostream& out) const {
  out << "label,medianWallNanos,totalEvalCount,rowsOut\n";
  for (const SweepRow& row : rows) {
    out << row.label << ',' << row.median_wall_nanos << ',' << row.total_eval_count << ','
        << row.rows_out << '\n';
  }
}

SweepResult sweep_permutations(const ExperimentSpec& spec) {
  spec.validate();
  const uint32_t n = spec.query.size();
  if (n > 6) throw ConfigError("permutation sweep refuses n > 6 (factorial guard)");

  SweepResult result;
  const auto add = [&result](RunReport report) {
    result.rows.push_back({report.label, report.wall_nanos, report.total_eval_count(),
                           report.rows_out});
    result.reports.push_back(std::move(report));
  };
  add(run_experiment_median(spec, OperatorMode::adaptive()));
  for (const Permutation& perm : all_permutations(n)) {
    add(run_experiment_median(spec, OperatorMode::static_order(perm)));
  }
  return result;
}

SweepParameter sweep_parameter_from_name(std::string_view name) {
  if (name == "collectRate") return SweepParameter::CollectRate;
  if (name == "calculateRate") return SweepParameter::CalculateRate;
  if (name == "momentum") return SweepParameter::Momentum;
  throw ParseError("unknown parameter '" + std::string(name) +
                   "' (expected collectRate, calculateRate, or momentum)");
}

std::string_view sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::CollectRate: return "collectRate";
    case SweepParameter::CalculateRate: return "calculateRate";
    case SweepParameter::Momentum: return "momentum";
  }
  return "?";
}

void ParamSweepResult::write_csv(std::ostream& out) const {
  out << sweep_parameter_name(parameter) << ",medianWallNanos,totalEvalCount\n";
  for (const ParamSweepRow& row : rows) {
    out << format_double(row.value) << ',' << row.median_wall_nanos << ','
        << row.total_eval_count << '\n';
  }
}

ParamSweepResult sweep_parameter(const ExperimentSpec& spec, SweepParameter parameter,
                                 const std::vector<double>& values) {
  spec.validate();
  if (values.empty()) throw ConfigError("parameter sweep needs at least one value");

  // Validate every value before any run starts.
  std::vector<ExperimentSpec> configured;
  for (const double v : values) {
    ExperimentSpec point = spec;
    switch (parameter) {
      case SweepParameter::CollectRate:
      case SweepParameter::CalculateRate: {
        if (!(v >= 1.0) || v != std::floor(v))
          throw ConfigError("rate values must be integers >= 1");
        const uint64_t rate = static_cast<uint64_t>(v);
        if (parameter == SweepParameter::CollectRate) {
          point.monitor.collect_rate = rate;
        } else {
          point.monitor.calculate_rate = rate;
        }
        break;
      }
      case SweepParameter::Momentum:
        point.momentum = MomentumConfig{v};
        point.momentum.validate();
        break;
    }
    point.validate();
    configured.push_back(std::move(point));
  }

  ParamSweepResult result;
  result.parameter = parameter;
  for (size_t i = 0; i < values.size(); ++i) {
    const RunReport report = run_experiment_median(configured[i], OperatorMode::adaptive());
    result.rows.push_back({values[i], report.wall_nanos, report.total_eval_count()});
  }
  return result;
}

FilterQuery derive_thresholds(const std::vector<ThresholdTarget>& targets,
                              const DatasetSpec& spec, size_t segment_index) {
  spec.validate();
  if (targets.empty()) throw ConfigError("derive_thresholds needs at least one target");
  if (segment_index >= spec.segments.size()) throw ConfigError("segment index out of range");
  const Segment& segment = spec.segments[segment_index];

  std::vector<Predicate> predicates;
  for (const ThresholdTarget& t : targets) {
    if (!(t.pass_fraction > 0.0 && t.pass_fraction < 1.0))
      throw ConfigError("target pass fraction must be strictly inside (0, 1)");
    if (t.column >= segment.columns.size()) throw ConfigError("target column out of range");
    const ColumnSpec& col = segment.columns[t.column];

    double z = 0.0;
    switch (t.cmp) {
      case Comparator::Gt:
      case Comparator::Ge:
        z = normal_quantile(1.0 - t.pass_fraction);
        break;
      case Comparator::Lt:
      case Comparator::Le:
        z = normal_quantile(t.pass_fraction);
        break;
      default:
        throw ConfigError("threshold targets use inequality comparators only");
    }
    const double x = col.mean + col.stddev * z;

    Value threshold;
    switch (col.kind) {
      case ValueKind::Integer:
        threshold = Value::integer(std::llround(x));
        break;
      case ValueKind::Date:
        threshold = Value::date(kDateBaseDays + std::llround(x));
        break;
      case ValueKind::Text: {
        long long v = std::llround(x);
        if (v < 0) v = 0;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%0*lld", kTextPadWidth, v);
        threshold = Value::text(buf);
        break;
      }
      case ValueKind::Real:
        threshold = Value::real(x);
        break;
    }
    predicates.push_back({t.column, t.cmp, std::move(threshold), t.pad_iterations});
  }
  return FilterQuery(spec.schema(), std::move(predicates));
}

SegmentProfile profile_segment(const FilterQuery& query, const Dataset& dataset,
                               uint64_t first_row, uint64_t rows, uint64_t sample_step) {
  if (sample_step < 1) throw ConfigError("sample_step must be >= 1");
  if (first_row + rows > dataset.row_count())
    throw ConfigError("segment range exceeds dataset bounds");

  EpochStats stats(query.size());
  MonitoredOutcome outcome;
  auto stream = dataset.scan(first_row, rows);
  Record record;
  uint64_t index = 0;
  while (stream->next(record)) {
    if (index % sample_step == 0) {
      evaluate_monitored(query, record, outcome);
      accumulate(stats, outcome);
    }
    ++index;
  }

  SegmentProfile profile;
  profile.selectivity = compute_selectivities(stats);
  profile.avg_cost_nanos.resize(query.size());
  for (uint32_t i = 0; i < query.size(); ++i) {
    profile.avg_cost_nanos[i] =
        static_cast<double>(stats.cost_nanos[i]) / static_cast<double>(stats.monitored);
  }
  profile.oracle_order = brute_force_best(profile.avg_cost_nanos, profile.selectivity);
  return profile;
}

void DriftResult::write_csv(std::ostream& out) const {
  const size_t segments = rows.empty() ? 0 : rows.front().segment_eval_counts.size();
  out << "label,medianWallNanos,totalEvalCount";
  for (size_t s = 0; s < segments; ++s) out << ",segEvalCount" << s;
  out << ",rowsOut\n";
  for (const DriftModeRow& row : rows) {
    out << row.label << ',' << row.median_wall_nanos << ',' << row.total_eval_count;
    for (const uint64_t c : row.segment_eval_counts) out << ',' << c;
    out << ',' << row.rows_out << '\n';
  }
}

void DriftResult::write_trace_csv(std::ostream& out) const {
  sift::write_trace_csv(adaptive_trace, out);
}

DriftResult drift_experiment(const ExperimentSpec& spec, const DatasetSpec& dataset_spec) {
  spec.validate();
  if (dataset_spec.segments.size() < 2)
    throw ConfigError("drift experiment needs at least two segments");
  const uint32_t n = spec.query.size();
  if (n > 6) throw ConfigError("drift experiment refuses n > 6 (factorial guard)");

  ExperimentSpec local = spec;
  local.segment_starts = dataset_spec.segment_starts();

  DriftResult result;
  for (size_t s = 0; s < dataset_spec.segments.size(); ++s) {
    const uint64_t first = local.segment_starts[s];
    const uint64_t rows = dataset_spec.segments[s].row_count;
    const uint64_t step = std::max<uint64_t>(1, rows / 20000);
    result.segment_profiles.push_back(
        profile_segment(spec.query, *spec.dataset, first, rows, step));
  }

  const auto add = [&result](const RunReport& report) {
    DriftModeRow row;
    row.label = report.label;
    row.median_wall_nanos = report.wall_nanos;
    row.total_eval_count = report.total_eval_count();
    for (uint32_t s = 0; s < report.segment_eval_counts.size(); ++s) {
      row.segment_eval_counts.push_back(report.segment_total(s));
    }
    row.rows_out = report.rows_out;
    result.rows.push_back(std::move(row));
  };

  RunReport adaptive = run_experiment_median(local, OperatorMode::adaptive());
  add(adaptive);
  for (const Permutation& perm : all_permutations(n)) {
    add(run_experiment_median(local, OperatorMode::static_order(perm)));
  }

  // Adoption analysis runs on worker 0's trace (the desk default runs one
  // worker; workers are independent anyway).
  const uint64_t boundary = local.segment_starts.back();
  const Permutation& oracle = result.segment_profiles.back().oracle_order;
  for (const CommitRecord& rec : adaptive.commit_trace) {
    if (rec.worker_id != 0) continue;
    if (!result.boundary_epoch && rec.stream_pos >= boundary) {
      result.boundary_epoch = rec.epoch_id;
    }
    if (result.boundary_epoch && !result.adoption_epoch && rec.permutation == oracle) {
      result.adoption_epoch = rec.epoch_id;
    }
  }
  result.adaptive_trace = std::move(adaptive.commit_trace);
  return result;
}

void write_run_csv(const RunReport& report, std::ostream& out) {
  out << "label,wallNanos,rowsIn,rowsOut,totalEvalCount,monitoredRows,commits,deferrals,"
         "skips,evalCounts\n";
  out << report.label << ',' << report.wall_nanos << ',' << report.rows_in << ','
      << report.rows_out << ',' << report.total_eval_count() << ',' << report.monitored_rows
      << ',' << report.commits << ',' << report.deferrals << ',' << report.skips << ',';
  std::string counts;
  for (const uint64_t c : report.eval_counts) {
    if (!counts.empty()) counts += '|';
    counts += std::to_string(c);
  }
  out << counts << '\n';
}

void write_trace_csv(const std::vector<CommitRecord>& trace, std::ostream& out) {
  out << "workerId,epochId,taskId,streamPos,monitored,selectivity,normCost,adjRank,"
         "permutation\n";
  for (const CommitRecord& rec : trace) {
    out << rec.worker_id << ',' << rec.epoch_id << ',' << rec.task_id << ',' << rec.stream_pos
        << ',' << rec.monitored << ',' << join_doubles(rec.selectivity) << ','
        << join_doubles(rec.norm_cost) << ',' << join_doubles(rec.adj_ranks) << ','
        << rec.permutation.to_string('|') << '\n';
  }
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw ConfigError("error writing '" + path + "'");
}

}  // namespace sift
