#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sift/error.hpp"

namespace sift {

enum class ValueKind : uint8_t { Integer, Date, Text, Real };

std::string_view kind_name(ValueKind kind);
ValueKind kind_from_name(std::string_view name);  // throws ParseError

// Dates are integer days since 1970-01-01 (proleptic Gregorian).
int64_t days_from_iso(std::string_view iso);  // "YYYY-MM-DD", throws ParseError
std::string iso_from_days(int64_t days);

/// A single typed cell. The kind is fixed at construction; comparing values
/// of different kinds is a SchemaError.
class Value {
 public:
  Value() = default;

  static Value integer(int64_t v) { return Value(ValueKind::Integer, v); }
  static Value date(int64_t days) { return Value(ValueKind::Date, days); }
  static Value real(double v) {
    Value out;
    out.kind_ = ValueKind::Real;
    out.real_ = v;
    return out;
  }
  static Value text(std::string v) {
    Value out;
    out.kind_ = ValueKind::Text;
    out.text_ = std::move(v);
    return out;
  }

  ValueKind kind() const { return kind_; }
  int64_t as_int() const { return int_; }  // Integer and Date
  double as_real() const { return real_; }
  const std::string& as_text() const { return text_; }

  /// Three-way comparison of same-kind values: negative, zero, or positive.
  /// Text compares bytewise; dates compare as day counts.
  int compare(const Value& other) const {
    if (kind_ != other.kind_) throw SchemaError("value kind mismatch in comparison");
    switch (kind_) {
      case ValueKind::Integer:
      case ValueKind::Date:
        return int_ < other.int_ ? -1 : (int_ > other.int_ ? 1 : 0);
      case ValueKind::Real:
        return real_ < other.real_ ? -1 : (real_ > other.real_ ? 1 : 0);
      case ValueKind::Text: {
        const int c = text_.compare(other.text_);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
      }
    }
    return 0;
  }

  bool operator==(const Value& other) const {
    return kind_ == other.kind_ && compare(other) == 0;
  }

  /// Renders the value the way data files do: dates as YYYY-MM-DD, text raw.
  std::string to_string() const;

 private:
  Value(ValueKind kind, int64_t v) : kind_(kind), int_(v) {}

  ValueKind kind_ = ValueKind::Integer;
  int64_t int_ = 0;
  double real_ = 0.0;
  std::string text_;
};

/// Parses a literal of the given kind: decimal integers, ISO dates,
/// floating-point reals, or raw text (no quoting).
Value parse_value(ValueKind kind, std::string_view token);

}  // namespace sift
