#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seed {

// Base for every recoverable grading-pipeline failure. `code()` is the stable
// identifier written into diagnostics and reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class EmptyResponse : public Error {
 public:
  EmptyResponse() : Error("EmptyResponse", "response contains no answer candidate") {}
};

class Unbalanceable : public Error {
 public:
  Unbalanceable(std::size_t needed, std::size_t limit)
      : Error("Unbalanceable", "balancing needs " + std::to_string(needed) +
                                   " inserted brackets (limit " + std::to_string(limit) + ")") {}
  explicit Unbalanceable(const std::string& what) : Error("Unbalanceable", what) {}
};

class UnknownCommand : public Error {
 public:
  UnknownCommand(std::string name, std::size_t position)
      : Error("UnknownCommand",
              "unsupported command \\" + name + " at " + std::to_string(position)),
        name_(std::move(name)),
        position_(position) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expectation)
      : Error("ParseError",
              "expected " + expectation + " at " + std::to_string(position)),
        position_(position),
        expectation_(std::move(expectation)) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& expectation() const noexcept { return expectation_; }

 private:
  std::size_t position_;
  std::string expectation_;
};

class TypeMismatch : public Error {
 public:
  explicit TypeMismatch(const std::string& what) : Error("TypeMismatch", what) {}
};

class NotARelation : public Error {
 public:
  NotARelation() : Error("NotARelation", "node is not a relation") {}
};

class Inconclusive : public Error {
 public:
  Inconclusive() : Error("Inconclusive", "every evaluation retry hit a singularity") {}
};

class UnknownUnit : public Error {
 public:
  explicit UnknownUnit(const std::string& token)
      : Error("UnknownUnit", "unknown unit '" + token + "'"), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class NoNumber : public Error {
 public:
  explicit NoNumber(const std::string& src)
      : Error("NoNumber", "no numeric literal in '" + src + "'") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& pred, const std::string& gt)
      : Error("DimensionMismatch", "dimension " + pred + " does not match " + gt) {}
};

class GroundTruthInvalid : public Error {
 public:
  // `position` is the parser offset inside the ground truth when the failure
  // came from the parser; `line` is set by dataset loading.
  explicit GroundTruthInvalid(const std::string& what, std::size_t line = 0,
                              std::size_t position = npos)
      : Error("GroundTruthInvalid", what), line_(line), position_(position) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t line() const noexcept { return line_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t line_;
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& field, const std::string& what)
      : Error("SchemaError",
              "line " + std::to_string(line) + ", field '" + field + "': " + what),
        line_(line),
        field_(field) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what) : Error("DegenerateInput", what) {}
};

class HttpError : public Error {
 public:
  HttpError(int status, const std::string& what)
      : Error("HttpError", "HTTP " + std::to_string(status) + ": " + what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class CacheCorrupt : public Error {
 public:
  explicit CacheCorrupt(const std::string& path) : Error("CacheCorrupt", "corrupt cache entry " + path) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("ConfigError", what) {}
};

}  // namespace seed
