#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "sift/dataset.hpp"

namespace sift {

/// One generated column within a segment: values are round(N(mean, stddev)),
/// rendered per kind (integer directly, date as base + offset days, text as
/// zero-padded decimal so bytewise order matches numeric order).
struct ColumnSpec {
  std::string name;
  ValueKind kind = ValueKind::Integer;  // Integer, Date, or Text
  double mean = 0.0;
  double stddev = 1.0;
};

/// A run of rows drawn from one set of column distributions. Drift is
/// modelled as piecewise-constant means/stddevs across segments.
struct Segment {
  uint64_t row_count = 0;
  std::vector<ColumnSpec> columns;
};

struct DatasetSpec {
  std::vector<Segment> segments;
  uint64_t seed = 0;

  Schema schema() const;  // derived from segment 0 (names and kinds)
  uint64_t total_rows() const;
  std::vector<uint64_t> segment_starts() const;  // global first row per segment
  void validate() const;
};

/// Date columns generate around this base (2000-01-01, in days since epoch).
inline constexpr int64_t kDateBaseDays = 10957;

/// Width of zero-padded text values; keeps them inside small-string storage
/// and bytewise-ordered like their numeric source.
inline constexpr int kTextPadWidth = 10;

/// Lazily generated dataset. Row r is a pure function of (seed, r), so scans
/// of disjoint ranges are independent and byte-for-byte reproducible.
class GeneratedDataset : public Dataset {
 public:
  explicit GeneratedDataset(DatasetSpec spec);

  const Schema& schema() const override { return schema_; }
  uint64_t row_count() const override { return total_rows_; }
  std::unique_ptr<RecordStream> scan(uint64_t first_row, uint64_t rows) const override;

  const DatasetSpec& spec() const { return spec_; }

 private:
  DatasetSpec spec_;
  Schema schema_;
  std::vector<uint64_t> starts_;
  uint64_t total_rows_ = 0;
};

/// Standard normal CDF via std::erfc; independent of the sampler, usable as
/// a test oracle for tail probabilities.
double normal_cdf(double z);

/// Inverse of normal_cdf by bisection; p must lie strictly inside (0, 1).
double normal_quantile(double p);

/// Flat key-value dataset spec text:
///   seed = 42
///   columns = ts:date, load:integer, host:text
///   [segment]
///   rows = 1000000
///   ts = 120, 40        # mean, stddev
///   load = 500, 120
///   host = 2000, 300
DatasetSpec parse_dataset_spec(std::istream& in);
DatasetSpec load_dataset_spec(const std::string& path);
void write_dataset_spec(const DatasetSpec& spec, std::ostream& out);

/// Record text files: header line `name:kind,...`, then one comma-separated
/// row per record. Dates render as YYYY-MM-DD; text is unquoted (the
/// generator never emits commas; the writer rejects them).
void write_records_csv(const Dataset& dataset, std::ostream& out);
void write_records_csv_file(const Dataset& dataset, const std::string& path);
std::unique_ptr<MemoryDataset> load_records_csv(std::istream& in);
std::unique_ptr<MemoryDataset> load_records_csv_file(const std::string& path);

}  // namespace sift
