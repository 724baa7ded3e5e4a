#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sift/value.hpp"

namespace sift {

struct Column {
  std::string name;
  ValueKind kind;
};

/// Ordered, uniquely named columns. Immutable after construction.
class Schema {
 public:
  explicit Schema(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  uint32_t size() const { return static_cast<uint32_t>(columns_.size()); }
  const Column& column(uint32_t index) const { return columns_.at(index); }
  uint32_t index_of(std::string_view name) const;  // throws SchemaError

 private:
  std::vector<Column> columns_;
};

/// One row: values positionally conforming to a schema.
using Record = std::vector<Value>;

/// Throws SchemaError unless the record's length and kinds match.
void check_conforms(const Schema& schema, const Record& record);

enum class Comparator : uint8_t { Lt, Le, Gt, Ge, Eq, Ne };

std::string_view comparator_token(Comparator cmp);
Comparator comparator_from_token(std::string_view token);  // throws ParseError

namespace detail {

inline uint64_t& busy_sink() {
  thread_local uint64_t sink = 0;
  return sink;
}

// Fixed arithmetic loop; the accumulator lands in a thread-local sink so the
// optimizer cannot drop it. One iteration is one LCG step.
inline void busy_work(uint32_t iterations) {
  uint64_t acc = 0x9e3779b97f4a7c15ull;
  for (uint32_t i = 0; i < iterations; ++i) {
    acc = acc * 6364136223846793005ull + 1442695040888963407ull;
  }
  busy_sink() += acc;
}

}  // namespace detail

/// A single-column comparison with optional artificial evaluation cost.
/// Its id is its position in the user-given predicate list.
struct Predicate {
  uint32_t column = 0;
  Comparator cmp = Comparator::Lt;
  Value threshold;
  uint32_t pad_iterations = 0;

  /// Pure: same record, same verdict. Runs the cost padding first, then the
  /// comparison. The record must conform to the query schema.
  bool matches(const Record& record) const {
    if (pad_iterations != 0) detail::busy_work(pad_iterations);
    const int c = record[column].compare(threshold);
    switch (cmp) {
      case Comparator::Lt: return c < 0;
      case Comparator::Le: return c <= 0;
      case Comparator::Gt: return c > 0;
      case Comparator::Ge: return c >= 0;
      case Comparator::Eq: return c == 0;
      case Comparator::Ne: return c != 0;
    }
    return false;
  }

  std::string to_string(const Schema& schema) const;
};

inline bool evaluate(const Predicate& predicate, const Record& record) {
  return predicate.matches(record);
}

/// A conjunction of predicates over one schema. Construction validates every
/// predicate (column index in range, threshold kind matches the column) so
/// evaluation never fails mid-stream. Immutable and freely shared by tasks.
class FilterQuery {
 public:
  FilterQuery(Schema schema, std::vector<Predicate> predicates);

  const Schema& schema() const { return schema_; }
  const std::vector<Predicate>& predicates() const { return predicates_; }
  uint32_t size() const { return static_cast<uint32_t>(predicates_.size()); }

  std::string to_string() const;

 private:
  Schema schema_;
  std::vector<Predicate> predicates_;
};

/// Semantic reference for every adaptive path: true iff all predicates pass,
/// evaluated in user order without short-circuit tricks.
inline bool naive_conjunction(const FilterQuery& query, const Record& record) {
  bool pass = true;
  for (const Predicate& p : query.predicates()) pass = p.matches(record) && pass;
  return pass;
}

/// Parses `col OP literal` clauses joined by `&&`. Comparators: < <= > >= ==
/// !=. Literals are typed by the named column: integers, ISO dates
/// (YYYY-MM-DD), single-quoted strings, reals for real columns.
FilterQuery parse_query(const Schema& schema, std::string_view text);

}  // namespace sift
