#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sift/query.hpp"

namespace sift {

/// Pull-based record source. next() fills `out` (reusing its capacity) and
/// returns false once the stream is exhausted.
class RecordStream {
 public:
  virtual ~RecordStream() = default;
  virtual bool next(Record& out) = 0;
};

/// A bounded, rescannable source of records. Scans over disjoint row ranges
/// are independent, so partitions can be consumed concurrently.
class Dataset {
 public:
  virtual ~Dataset() = default;
  virtual const Schema& schema() const = 0;
  virtual uint64_t row_count() const = 0;
  virtual std::unique_ptr<RecordStream> scan(uint64_t first_row, uint64_t rows) const = 0;

  std::unique_ptr<RecordStream> scan_all() const { return scan(0, row_count()); }
};

/// Materialized rows, schema-checked at construction.
class MemoryDataset : public Dataset {
 public:
  MemoryDataset(Schema schema, std::vector<Record> rows);

  const Schema& schema() const override { return schema_; }
  uint64_t row_count() const override { return rows_.size(); }
  std::unique_ptr<RecordStream> scan(uint64_t first_row, uint64_t rows) const override;

  const std::vector<Record>& rows() const { return rows_; }

 private:
  Schema schema_;
  std::vector<Record> rows_;
};

/// A contiguous chunk of a dataset, consumable as an independent stream.
struct PartitionRef {
  const Dataset* dataset = nullptr;
  uint64_t first_row = 0;
  uint64_t rows = 0;

  std::unique_ptr<RecordStream> open() const { return dataset->scan(first_row, rows); }
};

/// Splits a dataset into contiguous chunks of partition_size rows (the last
/// chunk may be short), preserving row order within each chunk.
std::vector<PartitionRef> partition(const Dataset& dataset, uint64_t partition_size);

}  // namespace sift
