#include "sift/dataset.hpp"

namespace sift {

namespace {

class VectorStream : public RecordStream {
 public:
  VectorStream(const std::vector<Record>* rows, uint64_t first, uint64_t count)
      : rows_(rows), pos_(first), end_(first + count) {}

  bool next(Record& out) override {
    if (pos_ >= end_) return false;
    out = (*rows_)[pos_++];
    return true;
  }

 private:
  const std::vector<Record>* rows_;
  uint64_t pos_;
  uint64_t end_;
};

}  // namespace

MemoryDataset::MemoryDataset(Schema schema, std::vector<Record> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  for (const Record& r : rows_) check_conforms(schema_, r);
}

std::unique_ptr<RecordStream> MemoryDataset::scan(uint64_t first_row, uint64_t rows) const {
  if (first_row + rows > rows_.size())
    throw ConfigError("scan range exceeds dataset bounds");
  return std::make_unique<VectorStream>(&rows_, first_row, rows);
}

std::vector<PartitionRef> partition(const Dataset& dataset, uint64_t partition_size) {
  if (partition_size < 1) throw ConfigError("partition_size must be >= 1");
  std::vector<PartitionRef> parts;
  const uint64_t total = dataset.row_count();
  for (uint64_t first = 0; first < total; first += partition_size) {
    parts.push_back({&dataset, first, std::min(partition_size, total - first)});
  }
  if (parts.empty()) parts.push_back({&dataset, 0, 0});
  return parts;
}

}  // namespace sift
