#pragma once

#include <stdexcept>
#include <string>

namespace sift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kind or column mismatch. Raised while building schemas, queries, or
/// records -- never on the per-record hot path of a validated query.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or guard violation (e.g. factorial guards).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed query text, dataset spec, or data file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An epoch closed without a single monitored row; rank computation is
/// impossible and the caller must keep the previous permutation.
class NoSamples : public Error {
 public:
  NoSamples() : Error("epoch has no monitored rows") {}
};

}  // namespace sift
