#include "sift/query.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace sift {

Schema::Schema(std::vector<Column> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw SchemaError("schema needs at least one column");
  std::unordered_set<std::string_view> seen;
  for (const Column& c : columns_) {
    if (c.name.empty()) throw SchemaError("empty column name");
    if (!seen.insert(c.name).second)
      throw SchemaError("duplicate column name '" + c.name + "'");
  }
}

uint32_t Schema::index_of(std::string_view name) const {
  for (uint32_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw SchemaError("unknown column '" + std::string(name) + "'");
}

void check_conforms(const Schema& schema, const Record& record) {
  if (record.size() != schema.size())
    throw SchemaError("record width " + std::to_string(record.size()) +
                      " does not match schema width " + std::to_string(schema.size()));
  for (uint32_t i = 0; i < schema.size(); ++i) {
    if (record[i].kind() != schema.column(i).kind)
      throw SchemaError("record kind mismatch in column '" + schema.column(i).name + "'");
  }
}

std::string_view comparator_token(Comparator cmp) {
  switch (cmp) {
    case Comparator::Lt: return "<";
    case Comparator::Le: return "<=";
    case Comparator::Gt: return ">";
    case Comparator::Ge: return ">=";
    case Comparator::Eq: return "==";
    case Comparator::Ne: return "!=";
  }
  return "?";
}

Comparator comparator_from_token(std::string_view token) {
  if (token == "<") return Comparator::Lt;
  if (token == "<=") return Comparator::Le;
  if (token == ">") return Comparator::Gt;
  if (token == ">=") return Comparator::Ge;
  if (token == "==") return Comparator::Eq;
  if (token == "!=") return Comparator::Ne;
  throw ParseError("unknown comparator '" + std::string(token) + "'");
}

std::string Predicate::to_string(const Schema& schema) const {
  std::string out = schema.column(column).name;
  out += ' ';
  out += comparator_token(cmp);
  out += ' ';
  if (threshold.kind() == ValueKind::Text) {
    out += '\'';
    out += threshold.as_text();
    out += '\'';
  } else {
    out += threshold.to_string();
  }
  return out;
}

FilterQuery::FilterQuery(Schema schema, std::vector<Predicate> predicates)
    : schema_(std::move(schema)), predicates_(std::move(predicates)) {
  if (predicates_.empty()) throw SchemaError("query needs at least one predicate");
  for (const Predicate& p : predicates_) {
    if (p.column >= schema_.size())
      throw SchemaError("predicate column index " + std::to_string(p.column) +
                        " out of range");
    if (p.threshold.kind() != schema_.column(p.column).kind)
      throw SchemaError("threshold kind does not match column '" +
                        schema_.column(p.column).name + "'");
  }
}

std::string FilterQuery::to_string() const {
  std::string out;
  for (const Predicate& p : predicates_) {
    if (!out.empty()) out += " && ";
    out += p.to_string(schema_);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Predicate parse_clause(const Schema& schema, std::string_view clause) {
  clause = trim(clause);
  if (clause.empty()) throw ParseError("empty clause in query");

  // Column name runs until whitespace or a comparator character.
  size_t name_end = 0;
  while (name_end < clause.size() && clause[name_end] != ' ' && clause[name_end] != '\t' &&
         clause[name_end] != '<' && clause[name_end] != '>' && clause[name_end] != '=' &&
         clause[name_end] != '!') {
    ++name_end;
  }
  const std::string_view name = trim(clause.substr(0, name_end));
  if (name.empty()) throw ParseError("missing column name in clause '" + std::string(clause) + "'");
  std::string_view rest = trim(clause.substr(name_end));

  size_t op_len = 0;
  while (op_len < rest.size() &&
         (rest[op_len] == '<' || rest[op_len] == '>' || rest[op_len] == '=' || rest[op_len] == '!')) {
    ++op_len;
  }
  if (op_len == 0) throw ParseError("missing comparator in clause '" + std::string(clause) + "'");
  const Comparator cmp = comparator_from_token(rest.substr(0, op_len));
  std::string_view literal = trim(rest.substr(op_len));
  if (literal.empty()) throw ParseError("missing literal in clause '" + std::string(clause) + "'");

  const uint32_t col = schema.index_of(name);
  const ValueKind kind = schema.column(col).kind;

  if (literal.front() == '\'') {
    if (kind != ValueKind::Text)
      throw ParseError("quoted literal on non-text column '" + std::string(name) + "'");
    if (literal.size() < 2 || literal.back() != '\'')
      throw ParseError("unterminated string literal in clause '" + std::string(clause) + "'");
    literal = literal.substr(1, literal.size() - 2);
    return Predicate{col, cmp, Value::text(std::string(literal)), 0};
  }
  if (kind == ValueKind::Text)
    throw ParseError("text column '" + std::string(name) + "' needs a single-quoted literal");
  return Predicate{col, cmp, parse_value(kind, literal), 0};
}

}  // namespace

FilterQuery parse_query(const Schema& schema, std::string_view text) {
  std::vector<Predicate> predicates;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t amp = text.find("&&", pos);
    const std::string_view clause =
        amp == std::string_view::npos ? text.substr(pos) : text.substr(pos, amp - pos);
    predicates.push_back(parse_clause(schema, clause));
    if (amp == std::string_view::npos) break;
    pos = amp + 2;
  }
  return FilterQuery(schema, std::move(predicates));
}

}  // namespace sift
