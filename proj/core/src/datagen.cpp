#include "sift/datagen.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sift {

namespace {

// SplitMix64 finalizer; the generator is a pure hash of (seed, row, column)
// so any row can be produced without generating its predecessors.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline double unit_double(uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;  // [0, 1)
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

// One standard normal deviate per (seed, row, column) via Box-Muller.
inline double normal_unit(uint64_t seed, uint64_t row, uint32_t column) {
  uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ull);
  h = mix64(h ^ row);
  h = mix64(h ^ column);
  const double u = unit_double(mix64(h));
  const double v = unit_double(mix64(h ^ 0x452821e638d01377ull));
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u));
  return radius * std::cos(kTwoPi * v);
}

Value make_value(const ColumnSpec& col, double deviate) {
  const double x = col.mean + col.stddev * deviate;
  switch (col.kind) {
    case ValueKind::Integer:
      return Value::integer(std::llround(x));
    case ValueKind::Date:
      return Value::date(kDateBaseDays + std::llround(x));
    case ValueKind::Text: {
      long long n = std::llround(x);
      if (n < 0) n = 0;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%0*lld", kTextPadWidth, n);
      return Value::text(buf);
    }
    case ValueKind::Real:
      return Value::real(x);
  }
  throw ConfigError("unhandled column kind");
}

class GeneratorStream : public RecordStream {
 public:
  GeneratorStream(const GeneratedDataset* dataset, uint64_t first, uint64_t count)
      : spec_(&dataset->spec()), starts_(spec_->segment_starts()),
        row_(first), end_(first + count) {
    segment_ = 0;
    while (segment_ + 1 < starts_.size() && row_ >= starts_[segment_ + 1]) ++segment_;
  }

  bool next(Record& out) override {
    if (row_ >= end_) return false;
    while (segment_ + 1 < starts_.size() && row_ >= starts_[segment_ + 1]) ++segment_;
    const Segment& seg = spec_->segments[segment_];
    const uint32_t width = static_cast<uint32_t>(seg.columns.size());
    out.resize(width);
    for (uint32_t c = 0; c < width; ++c) {
      out[c] = make_value(seg.columns[c], normal_unit(spec_->seed, row_, c));
    }
    ++row_;
    return true;
  }

 private:
  const DatasetSpec* spec_;
  std::vector<uint64_t> starts_;
  uint64_t row_;
  uint64_t end_;
  size_t segment_;
};

}  // namespace

Schema DatasetSpec::schema() const {
  validate();
  std::vector<Column> columns;
  for (const ColumnSpec& c : segments.front().columns) columns.push_back({c.name, c.kind});
  return Schema(std::move(columns));
}

uint64_t DatasetSpec::total_rows() const {
  uint64_t total = 0;
  for (const Segment& s : segments) total += s.row_count;
  return total;
}

std::vector<uint64_t> DatasetSpec::segment_starts() const {
  std::vector<uint64_t> starts;
  uint64_t at = 0;
  for (const Segment& s : segments) {
    starts.push_back(at);
    at += s.row_count;
  }
  return starts;
}

void DatasetSpec::validate() const {
  if (segments.empty()) throw ConfigError("dataset spec needs at least one segment");
  const Segment& first = segments.front();
  if (first.columns.empty()) throw ConfigError("segment needs at least one column");
  for (const Segment& seg : segments) {
    if (seg.row_count < 1) throw ConfigError("segment row count must be >= 1");
    if (seg.columns.size() != first.columns.size())
      throw ConfigError("segments disagree on column count");
    for (size_t c = 0; c < seg.columns.size(); ++c) {
      const ColumnSpec& col = seg.columns[c];
      if (col.name != first.columns[c].name || col.kind != first.columns[c].kind)
        throw ConfigError("segments disagree on column '" + col.name + "'");
      if (!(col.stddev > 0.0)) throw ConfigError("stddev must be > 0 for '" + col.name + "'");
      if (col.kind == ValueKind::Real)
        throw ConfigError("generated columns are date, integer, or text");
    }
  }
}

GeneratedDataset::GeneratedDataset(DatasetSpec spec)
    : spec_(std::move(spec)), schema_(spec_.schema()) {
  starts_ = spec_.segment_starts();
  total_rows_ = spec_.total_rows();
}

std::unique_ptr<RecordStream> GeneratedDataset::scan(uint64_t first_row, uint64_t rows) const {
  if (first_row + rows > total_rows_) throw ConfigError("scan range exceeds dataset bounds");
  return std::make_unique<GeneratorStream>(this, first_row, rows);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("quantile needs p strictly inside (0, 1)");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

std::string trim_copy(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t next = s.find(sep, pos);
    out.push_back(trim_copy(s.substr(pos, next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& token, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " '" + token + "'");
  }
}

uint64_t parse_u64(const std::string& token, const std::string& what) {
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " '" + token + "'");
  }
}

}  // namespace

DatasetSpec parse_dataset_spec(std::istream& in) {
  DatasetSpec spec;
  std::vector<Column> columns;
  Segment* segment = nullptr;
  std::string line;
  int line_no = 0;
  const auto fail = [&](const std::string& msg) {
    throw ParseError("dataset spec line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim_copy(line);
    if (line.empty()) continue;

    if (line == "[segment]") {
      if (columns.empty()) fail("'columns' must come before the first [segment]");
      Segment seg;
      for (const Column& c : columns) seg.columns.push_back({c.name, c.kind, 0.0, 1.0});
      spec.segments.push_back(std::move(seg));
      segment = &spec.segments.back();
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim_copy(line.substr(0, eq));
    const std::string value = trim_copy(line.substr(eq + 1));

    if (segment == nullptr) {
      if (key == "seed") {
        spec.seed = parse_u64(value, "seed");
      } else if (key == "columns") {
        for (const std::string& item : split(value, ',')) {
          const size_t colon = item.find(':');
          if (colon == std::string::npos) fail("column needs 'name:kind': '" + item + "'");
          columns.push_back({trim_copy(item.substr(0, colon)),
                             kind_from_name(trim_copy(item.substr(colon + 1)))});
        }
        if (columns.empty()) fail("empty column list");
      } else {
        fail("unknown key '" + key + "' before [segment]");
      }
      continue;
    }

    if (key == "rows") {
      segment->row_count = parse_u64(value, "row count");
      continue;
    }
    bool matched = false;
    for (ColumnSpec& col : segment->columns) {
      if (col.name != key) continue;
      const auto parts = split(value, ',');
      if (parts.size() != 2) fail("column '" + key + "' needs 'mean, stddev'");
      col.mean = parse_double(parts[0], "mean");
      col.stddev = parse_double(parts[1], "stddev");
      matched = true;
      break;
    }
    if (!matched) fail("unknown key '" + key + "' in segment");
  }

  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw ParseError(std::string("invalid dataset spec: ") + e.what());
  }
  return spec;
}

DatasetSpec load_dataset_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset spec '" + path + "'");
  return parse_dataset_spec(in);
}

void write_dataset_spec(const DatasetSpec& spec, std::ostream& out) {
  spec.validate();
  out << "seed = " << spec.seed << "\n";
  out << "columns = ";
  const auto& cols = spec.segments.front().columns;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ", ";
    out << cols[i].name << ":" << kind_name(cols[i].kind);
  }
  out << "\n";
  char buf[64];
  for (const Segment& seg : spec.segments) {
    out << "\n[segment]\nrows = " << seg.row_count << "\n";
    for (const ColumnSpec& col : seg.columns) {
      std::snprintf(buf, sizeof(buf), "%.17g, %.17g", col.mean, col.stddev);
      out << col.name << " = " << buf << "\n";
    }
  }
}

void write_records_csv(const Dataset& dataset, std::ostream& out) {
  const Schema& schema = dataset.schema();
  for (uint32_t i = 0; i < schema.size(); ++i) {
    if (i) out << ',';
    out << schema.column(i).name << ':' << kind_name(schema.column(i).kind);
  }
  out << '\n';
  auto stream = dataset.scan_all();
  Record rec;
  while (stream->next(rec)) {
    for (uint32_t i = 0; i < rec.size(); ++i) {
      if (i) out << ',';
      const std::string cell = rec[i].to_string();
      if (cell.find(',') != std::string::npos)
        throw ConfigError("text value contains a comma; not representable in record files");
      out << cell;
    }
    out << '\n';
  }
}

void write_records_csv_file(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_records_csv(dataset, out);
  out.flush();
  if (!out) throw ConfigError("error writing '" + path + "'");
}

std::unique_ptr<MemoryDataset> load_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("record file is empty");
  std::vector<Column> columns;
  for (const std::string& item : split(line, ',')) {
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("record file header needs 'name:kind': '" + item + "'");
    columns.push_back({trim_copy(item.substr(0, colon)),
                       kind_from_name(trim_copy(item.substr(colon + 1)))});
  }
  Schema schema(std::move(columns));

  std::vector<Record> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != schema.size())
      throw ParseError("record file line " + std::to_string(line_no) + ": expected " +
                       std::to_string(schema.size()) + " cells, got " +
                       std::to_string(cells.size()));
    Record rec;
    rec.reserve(cells.size());
    for (uint32_t i = 0; i < cells.size(); ++i) {
      rec.push_back(parse_value(schema.column(i).kind, cells[i]));
    }
    rows.push_back(std::move(rec));
  }
  return std::make_unique<MemoryDataset>(std::move(schema), std::move(rows));
}

std::unique_ptr<MemoryDataset> load_records_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open record file '" + path + "'");
  return load_records_csv(in);
}

}  // namespace sift
