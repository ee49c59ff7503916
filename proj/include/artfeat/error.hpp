#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace artfeat {

// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorCategory {
  Input,      // a single input (image, row) could not be processed
  Config,     // bad specification, schema, or parameter
  Numerical,  // rank deficiency, log of a non-positive value, ...
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// ---- image features -------------------------------------------------------

class ImageTooSmall : public Error {
 public:
  ImageTooSmall(std::size_t width, std::size_t height)
      : Error(ErrorCategory::Input,
              "image too small for a 3x3 kernel: " + std::to_string(width) + "x" +
                  std::to_string(height)) {}
};

class NoChromaticPixels : public Error {
 public:
  NoChromaticPixels()
      : Error(ErrorCategory::Input, "every pixel is achromatic; hue variance undefined") {}
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

// ---- corpus ---------------------------------------------------------------

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class RowError : public Error {
 public:
  RowError(std::size_t row, std::string field, const std::string& message)
      : Error(ErrorCategory::Input,
              "row " + std::to_string(row) + ", field '" + field + "': " + message),
        row_(row),
        field_(std::move(field)) {}
  std::size_t row() const noexcept { return row_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t row_;
  std::string field_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error(ErrorCategory::Config, "unknown variable '" + name + "'") {}
};

class OutOfRange : public Error {
 public:
  explicit OutOfRange(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class InvalidPlantSpec : public Error {
 public:
  explicit InvalidPlantSpec(const std::string& what)
      : Error(ErrorCategory::Config, "invalid plant spec: " + what) {}
};

// ---- hedonic --------------------------------------------------------------

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string& what)
      : Error(ErrorCategory::Config, "invalid model spec: " + what) {}
};

class MissingValue : public Error {
 public:
  MissingValue(const std::string& record, const std::string& field)
      : Error(ErrorCategory::Config,
              "record '" + record + "' has no value for '" + field + "'") {}
};

class NonPositiveValue : public Error {
 public:
  NonPositiveValue(const std::string& record, const std::string& field, double value)
      : Error(ErrorCategory::Numerical,
              "record '" + record + "': " + field + " = " + std::to_string(value) +
                  " is not positive; cannot take its logarithm"),
        record_(record),
        field_(field) {}
  const std::string& record() const noexcept { return record_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string record_;
  std::string field_;
};

class InsufficientData : public Error {
 public:
  InsufficientData(std::size_t n, std::size_t k)
      : Error(ErrorCategory::Numerical,
              "need more observations than columns: n = " + std::to_string(n) +
                  ", k = " + std::to_string(k)) {}
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& column)
      : Error(ErrorCategory::Numerical,
              "design is rank deficient: column '" + column +
                  "' is a linear combination of earlier columns"),
        column_(column) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class CollinearColumns : public Error {
 public:
  explicit CollinearColumns(std::vector<std::string> columns)
      : Error(ErrorCategory::Numerical, message(columns)), columns_(std::move(columns)) {}
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  static std::string message(const std::vector<std::string>& columns) {
    std::string m = "collinear design columns:";
    for (const auto& c : columns) m += " '" + c + "'";
    return m;
  }
  std::vector<std::string> columns_;
};

}  // namespace artfeat
