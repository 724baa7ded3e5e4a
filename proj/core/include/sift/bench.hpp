#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sift/datagen.hpp"
#include "sift/pipeline.hpp"

namespace sift {

/// Shared shape of one experiment: dataset, query, operator layout, and
/// adaptive parameters. Harness defaults are desk scale; the library
/// defaults in MonitorConfig stay at their large-run values.
struct ExperimentSpec {
  const Dataset* dataset = nullptr;
  FilterQuery query;
  uint32_t workers = 1;
  uint32_t tasks_per_worker = 4;
  uint64_t partition_size = 250000;
  MonitorConfig monitor{1000, 100000};
  MomentumConfig momentum{0.3};
  uint32_t repetitions = 1;
  std::vector<uint64_t> segment_starts = {0};

  void validate() const;
  RunConfig run_config(OperatorMode mode) const;
};

/// Runs the spec's query once in the given mode.
RunReport run_experiment(const ExperimentSpec& spec, OperatorMode mode);

/// Runs `repetitions` times; wall time is the median, counts come from the
/// first run.
RunReport run_experiment_median(const ExperimentSpec& spec, OperatorMode mode);

struct SweepRow {
  std::string label;
  uint64_t median_wall_nanos = 0;
  uint64_t total_eval_count = 0;
  uint64_t rows_out = 0;
};

/// Every static ordering (n! runs; refuses n > 6) plus one adaptive run.
struct SweepResult {
  std::vector<SweepRow> rows;           // adaptive first, then statics
  std::vector<RunReport> reports;       // first-run report per row
  void write_csv(std::ostream& out) const;
};
SweepResult sweep_permutations(const ExperimentSpec& spec);

enum class SweepParameter { CollectRate, CalculateRate, Momentum };
SweepParameter sweep_parameter_from_name(std::string_view name);  // throws ParseError
std::string_view sweep_parameter_name(SweepParameter p);

struct ParamSweepRow {
  double value = 0.0;
  uint64_t median_wall_nanos = 0;
  uint64_t total_eval_count = 0;
};

struct ParamSweepResult {
  SweepParameter parameter = SweepParameter::CollectRate;
  std::vector<ParamSweepRow> rows;
  void write_csv(std::ostream& out) const;
};

/// One adaptive run per value; the other parameters stay at the spec's
/// settings. Values are validated before any run starts.
ParamSweepResult sweep_parameter(const ExperimentSpec& spec, SweepParameter parameter,
                                 const std::vector<double>& values);

/// One predicate to derive: an inequality on a generated column hitting a
/// target pass fraction analytically (threshold = mean + stddev * z).
struct ThresholdTarget {
  uint32_t column = 0;
  Comparator cmp = Comparator::Gt;  // Lt, Le, Gt, Ge only
  double pass_fraction = 0.5;       // strictly inside (0, 1)
  uint32_t pad_iterations = 0;
};

/// Builds a query whose predicates hit the target pass fractions on the
/// given segment's distributions. With predicates on independent columns
/// the overall pass fraction is the product of the targets.
FilterQuery derive_thresholds(const std::vector<ThresholdTarget>& targets,
                              const DatasetSpec& spec, size_t segment_index = 0);

/// Measured per-segment ground truth: average costs and selectivities from
/// a systematic sample of the segment's rows, plus the expected-cost-optimal
/// order found by exhaustive search.
struct SegmentProfile {
  std::vector<double> avg_cost_nanos;
  std::vector<double> selectivity;
  Permutation oracle_order;
};
SegmentProfile profile_segment(const FilterQuery& query, const Dataset& dataset,
                               uint64_t first_row, uint64_t rows, uint64_t sample_step);

struct DriftModeRow {
  std::string label;
  uint64_t median_wall_nanos = 0;
  uint64_t total_eval_count = 0;
  std::vector<uint64_t> segment_eval_counts;
  uint64_t rows_out = 0;
};

struct DriftResult {
  std::vector<DriftModeRow> rows;  // adaptive first, then statics
  std::vector<CommitRecord> adaptive_trace;
  std::vector<SegmentProfile> segment_profiles;
  // First commit whose task had crossed into the last segment, and the first
  // commit at/after it whose permutation equals the last segment's oracle.
  std::optional<uint64_t> boundary_epoch;
  std::optional<uint64_t> adoption_epoch;

  void write_csv(std::ostream& out) const;
  void write_trace_csv(std::ostream& out) const;
};

/// Adaptive against every static ordering on a drifting dataset (needs >= 2
/// segments), with per-segment evaluation counts and the commit trace.
DriftResult drift_experiment(const ExperimentSpec& spec, const DatasetSpec& dataset_spec);

void write_run_csv(const RunReport& report, std::ostream& out);
void write_trace_csv(const std::vector<CommitRecord>& trace, std::ostream& out);
void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& writer);

}  // namespace sift
