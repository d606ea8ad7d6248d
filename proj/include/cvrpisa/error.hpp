#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cvrpisa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  MissingSection,
  MalformedNumber,
  DimensionMismatch,
  UnsupportedEdgeWeightType,
  InvalidInstance,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

// Raised when an operation needs node coordinates the instance does not carry.
class GeometryUnavailable : public Error {
 public:
  using Error::Error;
};

// Rank-deficient input to PCA or PILOT.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

class MissingFeature : public Error {
 public:
  explicit MissingFeature(std::vector<std::string> names);
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvrpisa
