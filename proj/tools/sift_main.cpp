// sift command line: generate synthetic datasets, run filter queries in
// adaptive or static mode, and reproduce the permutation/parameter/drift
// experiments as CSV reports.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sift/bench.hpp"

namespace {

using namespace sift;

struct DataSource {
  std::unique_ptr<Dataset> dataset;
  std::optional<DatasetSpec> spec;  // present when generated
  std::vector<uint64_t> segment_starts{0};
};

DataSource open_data(const std::string& arg) {
  DataSource src;
  if (arg.rfind("gen:", 0) == 0) {
    DatasetSpec spec = load_dataset_spec(arg.substr(4));
    src.segment_starts = spec.segment_starts();
    src.spec = spec;
    src.dataset = std::make_unique<GeneratedDataset>(std::move(spec));
  } else {
    src.dataset = load_records_csv_file(arg);
  }
  return src;
}

DataSource open_spec(const std::string& path) {
  DataSource src;
  DatasetSpec spec = load_dataset_spec(path);
  src.segment_starts = spec.segment_starts();
  src.spec = spec;
  src.dataset = std::make_unique<GeneratedDataset>(std::move(spec));
  return src;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t next = text.find(sep, pos);
    out.push_back(text.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

OperatorMode parse_mode(const std::string& text, uint32_t n) {
  if (text == "adaptive") return OperatorMode::adaptive();
  if (text.rfind("static:", 0) == 0) {
    Permutation perm;
    for (const std::string& part : split_list(text.substr(7), ',')) {
      perm.order.push_back(static_cast<uint32_t>(std::stoul(part)));
    }
    if (perm.size() != n || !perm.is_valid())
      throw ConfigError("mode permutation must list every predicate id exactly once");
    return OperatorMode::static_order(std::move(perm));
  }
  throw ConfigError("mode must be 'adaptive' or 'static:<comma-separated ids>'");
}

std::vector<ThresholdTarget> parse_targets(const std::string& text, const Schema& schema) {
  std::vector<ThresholdTarget> targets;
  for (const std::string& item : split_list(text, ',')) {
    const auto parts = split_list(item, ':');
    if (parts.size() < 2 || parts.size() > 3)
      throw ConfigError("target needs column:fraction[:pad], got '" + item + "'");
    ThresholdTarget t;
    t.column = schema.index_of(parts[0]);
    t.pass_fraction = std::stod(parts[1]);
    if (parts.size() == 3) t.pad_iterations = static_cast<uint32_t>(std::stoul(parts[2]));
    targets.push_back(t);
  }
  return targets;
}

FilterQuery resolve_query(const DataSource& src, const std::string& query_text,
                          const std::string& targets_text, const std::string& pads_text) {
  std::optional<FilterQuery> query;
  if (!query_text.empty()) {
    query = parse_query(src.dataset->schema(), query_text);
  } else if (!targets_text.empty()) {
    if (!src.spec)
      throw ConfigError("--targets needs a generated dataset (gen:<spec> or drift --spec)");
    query = derive_thresholds(parse_targets(targets_text, src.dataset->schema()), *src.spec);
  } else {
    throw ConfigError("provide --query or --targets");
  }
  if (!pads_text.empty()) {
    const auto parts = split_list(pads_text, ',');
    if (parts.size() != query->size())
      throw ConfigError("--pad needs one value per predicate");
    std::vector<Predicate> preds = query->predicates();
    for (size_t i = 0; i < parts.size(); ++i) {
      preds[i].pad_iterations = static_cast<uint32_t>(std::stoul(parts[i]));
    }
    query = FilterQuery(query->schema(), std::move(preds));
  }
  return *query;
}

struct CommonOpts {
  uint32_t workers = 1;
  uint32_t tasks = 4;
  uint64_t partition_size = 250000;
  uint64_t collect_rate = 1000;
  uint64_t calculate_rate = 100000;  // desk-scale harness default
  double momentum = 0.3;
  uint32_t repetitions = 1;
  std::string query_text;
  std::string targets_text;
  std::string pads_text;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_repetitions) {
  cmd->add_option("--workers", opts.workers, "Independent rank-state owners");
  cmd->add_option("--tasks", opts.tasks, "Concurrent tasks per worker");
  cmd->add_option("--partition-size,-p", opts.partition_size, "Rows per partition");
  cmd->add_option("--collect-rate", opts.collect_rate, "Rows per monitored sample");
  cmd->add_option("--calculate-rate", opts.calculate_rate, "Rows per epoch");
  cmd->add_option("--momentum", opts.momentum, "Past preservation factor in [0,1]");
  cmd->add_option("--pad", opts.pads_text, "Per-predicate busy-work iterations, comma list");
  if (with_repetitions)
    cmd->add_option("--repetitions", opts.repetitions, "Runs per mode; wall time is the median");
}

ExperimentSpec make_spec(const DataSource& src, const FilterQuery& query,
                         const CommonOpts& opts) {
  ExperimentSpec spec{src.dataset.get(), query};
  spec.workers = opts.workers;
  spec.tasks_per_worker = opts.tasks;
  spec.partition_size = opts.partition_size;
  spec.monitor = {opts.collect_rate, opts.calculate_rate};
  spec.momentum = {opts.momentum};
  spec.repetitions = opts.repetitions;
  spec.segment_starts = src.segment_starts;
  return spec;
}

void print_report(const RunReport& r) {
  std::printf("%s: %llu rows in, %llu out, %.1f ms, %llu evaluations, %llu monitored, "
              "%llu commits (%llu deferred, %llu skipped)\n",
              r.label.c_str(), static_cast<unsigned long long>(r.rows_in),
              static_cast<unsigned long long>(r.rows_out), r.wall_nanos / 1e6,
              static_cast<unsigned long long>(r.total_eval_count()),
              static_cast<unsigned long long>(r.monitored_rows),
              static_cast<unsigned long long>(r.commits),
              static_cast<unsigned long long>(r.deferrals),
              static_cast<unsigned long long>(r.skips));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sift: adaptive predicate ordering for streaming conjunctive filters"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Materialize a dataset spec to a record file");
  std::string gen_spec_path, gen_out;
  generate->add_option("--spec", gen_spec_path, "Dataset spec file")->required();
  generate->add_option("--out", gen_out, "Output record file")->required();

  // run
  auto* run = app.add_subcommand("run", "Run one filter query over a dataset");
  std::string run_data, run_mode = "adaptive", run_out, run_trace_out;
  CommonOpts run_opts;
  run->add_option("--data", run_data, "Record file, or gen:<spec file>")->required();
  run->add_option("--query", run_opts.query_text, "Filter clauses joined by &&");
  run->add_option("--targets", run_opts.targets_text,
                  "Derive thresholds: column:fraction[:pad] list (generated data only)");
  run->add_option("--mode", run_mode, "adaptive | static:<comma-perm>");
  run->add_option("--out", run_out, "Write the run report CSV here");
  run->add_option("--trace-out", run_trace_out, "Write the commit trace CSV here");
  add_common(run, run_opts, false);

  // sweep-perms
  auto* sweep = app.add_subcommand("sweep-perms",
                                   "Adaptive vs every static predicate ordering");
  std::string sweep_data, sweep_out;
  CommonOpts sweep_opts;
  sweep_opts.repetitions = 3;
  sweep->add_option("--data", sweep_data, "Record file, or gen:<spec file>")->required();
  sweep->add_option("--query", sweep_opts.query_text, "Filter clauses joined by &&");
  sweep->add_option("--targets", sweep_opts.targets_text,
                    "Derive thresholds: column:fraction[:pad] list");
  sweep->add_option("--out", sweep_out, "Output CSV")->required();
  add_common(sweep, sweep_opts, true);

  // sweep-param
  auto* param = app.add_subcommand("sweep-param",
                                   "Adaptive runs across one parameter's values");
  std::string param_data, param_name, param_values, param_out;
  CommonOpts param_opts;
  param_opts.repetitions = 3;
  param->add_option("--data", param_data, "Record file, or gen:<spec file>")->required();
  param->add_option("--param", param_name, "collectRate | calculateRate | momentum")->required();
  param->add_option("--values", param_values, "Comma-separated values")->required();
  param->add_option("--query", param_opts.query_text, "Filter clauses joined by &&");
  param->add_option("--targets", param_opts.targets_text,
                    "Derive thresholds: column:fraction[:pad] list");
  param->add_option("--out", param_out, "Output CSV")->required();
  add_common(param, param_opts, true);

  // drift
  auto* drift = app.add_subcommand("drift",
                                   "Adaptive vs statics on a multi-segment dataset");
  std::string drift_spec_path, drift_out, drift_trace_out;
  CommonOpts drift_opts;
  drift->add_option("--spec", drift_spec_path, "Dataset spec file (>= 2 segments)")->required();
  drift->add_option("--query", drift_opts.query_text, "Filter clauses joined by &&");
  drift->add_option("--targets", drift_opts.targets_text,
                    "Derive thresholds: column:fraction[:pad] list");
  drift->add_option("--out", drift_out, "Output CSV")->required();
  drift->add_option("--trace-out", drift_trace_out, "Commit trace CSV");
  add_common(drift, drift_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      const DataSource src = open_spec(gen_spec_path);
      write_records_csv_file(*src.dataset, gen_out);
      std::printf("wrote %llu rows to %s\n",
                  static_cast<unsigned long long>(src.dataset->row_count()), gen_out.c_str());
    } else if (*run) {
      const DataSource src = open_data(run_data);
      const FilterQuery query =
          resolve_query(src, run_opts.query_text, run_opts.targets_text, run_opts.pads_text);
      const ExperimentSpec spec = make_spec(src, query, run_opts);
      const RunReport report =
          run_experiment(spec, parse_mode(run_mode, query.size()));
      print_report(report);
      if (!run_out.empty())
        write_csv_file(run_out, [&](std::ostream& os) { write_run_csv(report, os); });
      if (!run_trace_out.empty())
        write_csv_file(run_trace_out,
                       [&](std::ostream& os) { write_trace_csv(report.commit_trace, os); });
    } else if (*sweep) {
      const DataSource src = open_data(sweep_data);
      const FilterQuery query =
          resolve_query(src, sweep_opts.query_text, sweep_opts.targets_text, sweep_opts.pads_text);
      const SweepResult result = sweep_permutations(make_spec(src, query, sweep_opts));
      write_csv_file(sweep_out, [&](std::ostream& os) { result.write_csv(os); });
      std::printf("wrote %zu result lines to %s\n", result.rows.size(), sweep_out.c_str());
    } else if (*param) {
      const DataSource src = open_data(param_data);
      const FilterQuery query =
          resolve_query(src, param_opts.query_text, param_opts.targets_text, param_opts.pads_text);
      std::vector<double> values;
      for (const std::string& v : split_list(param_values, ',')) values.push_back(std::stod(v));
      const ParamSweepResult result =
          sweep_parameter(make_spec(src, query, param_opts),
                          sweep_parameter_from_name(param_name), values);
      write_csv_file(param_out, [&](std::ostream& os) { result.write_csv(os); });
      std::printf("wrote %zu result lines to %s\n", result.rows.size(), param_out.c_str());
    } else if (*drift) {
      const DataSource src = open_spec(drift_spec_path);
      const FilterQuery query =
          resolve_query(src, drift_opts.query_text, drift_opts.targets_text, drift_opts.pads_text);
      const DriftResult result =
          drift_experiment(make_spec(src, query, drift_opts), *src.spec);
      write_csv_file(drift_out, [&](std::ostream& os) { result.write_csv(os); });
      if (!drift_trace_out.empty())
        write_csv_file(drift_trace_out, [&](std::ostream& os) { result.write_trace_csv(os); });
      if (result.adoption_epoch) {
        std::printf("last-segment oracle order adopted at epoch %llu\n",
                    static_cast<unsigned long long>(*result.adoption_epoch));
      }
      std::printf("wrote %zu result lines to %s\n", result.rows.size(), drift_out.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
