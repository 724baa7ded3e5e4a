#include "sift/value.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace sift {

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Integer: return "integer";
    case ValueKind::Date: return "date";
    case ValueKind::Text: return "text";
    case ValueKind::Real: return "real";
  }
  return "?";
}

ValueKind kind_from_name(std::string_view name) {
  if (name == "integer" || name == "int") return ValueKind::Integer;
  if (name == "date") return ValueKind::Date;
  if (name == "text" || name == "string") return ValueKind::Text;
  if (name == "real" || name == "float") return ValueKind::Real;
  throw ParseError("unknown value kind: '" + std::string(name) + "'");
}

int64_t days_from_iso(std::string_view iso) {
  int year = 0;
  unsigned month = 0, day = 0;
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' ||
      std::sscanf(std::string(iso).c_str(), "%d-%u-%u", &year, &month, &day) != 3) {
    throw ParseError("bad date literal '" + std::string(iso) + "', expected YYYY-MM-DD");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{day}};
  if (!ymd.ok()) throw ParseError("invalid calendar date '" + std::string(iso) + "'");
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

std::string iso_from_days(int64_t days) {
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{days}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string Value::to_string() const {
  switch (kind_) {
    case ValueKind::Integer: return std::to_string(int_);
    case ValueKind::Date: return iso_from_days(int_);
    case ValueKind::Text: return text_;
    case ValueKind::Real: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", real_);
      return buf;
    }
  }
  return {};
}

Value parse_value(ValueKind kind, std::string_view token) {
  switch (kind) {
    case ValueKind::Integer: {
      int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(token.begin(), token.end(), v);
      if (ec != std::errc{} || ptr != token.end())
        throw ParseError("bad integer literal '" + std::string(token) + "'");
      return Value::integer(v);
    }
    case ValueKind::Date:
      return Value::date(days_from_iso(token));
    case ValueKind::Text:
      return Value::text(std::string(token));
    case ValueKind::Real: {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.begin(), token.end(), v);
      if (ec != std::errc{} || ptr != token.end())
        throw ParseError("bad real literal '" + std::string(token) + "'");
      return Value::real(v);
    }
  }
  throw ParseError("unhandled value kind");
}

}  // namespace sift
