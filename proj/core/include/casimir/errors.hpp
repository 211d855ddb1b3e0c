#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Coarse failure classes; the command line tool maps them to exit codes.
enum class ErrorCategory { config, geometry, numerical, resource_limit };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& message) : Error(ErrorCategory::config, message) {}
};

class GeometryError : public Error {
public:
  explicit GeometryError(const std::string& message) : Error(ErrorCategory::geometry, message) {}
};

// Raised by the OFF reader; the message already carries "file:line: ".
class MeshFormatError : public GeometryError {
public:
  MeshFormatError(const std::string& source, std::size_t line, const std::string& message)
      : GeometryError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& message) : Error(ErrorCategory::numerical, message) {}
};

class ResourceLimitError : public Error {
public:
  explicit ResourceLimitError(const std::string& message)
      : Error(ErrorCategory::resource_limit, message) {}
};

}  // namespace casimir
