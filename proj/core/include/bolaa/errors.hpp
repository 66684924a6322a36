#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bolaa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed task or ground truth.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Trajectory ordering violation (second plan, plan after action, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Prompt cannot be rendered inside the requested token budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Transport failure after retries, or a non-retryable backend response.
class BackendError : public Error {
 public:
  using Error::Error;
};

// The backend rejected the prompt as too long. Callers may re-truncate and retry.
class ContextOverflowError : public BackendError {
 public:
  using BackendError::BackendError;
};

class ShortageError : public Error {
 public:
  ShortageError(int level, std::size_t available, std::size_t requested)
      : Error("not enough tasks at complexity level " + std::to_string(level) + ": have " +
              std::to_string(available) + ", need " + std::to_string(requested)),
        level_(level) {}

  int level() const noexcept { return level_; }

 private:
  int level_;
};

// Corrupt or unsupported trace file. line() is 1-based; 0 when the file could not be opened.
class TraceError : public Error {
 public:
  TraceError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Unreadable or invalid benchmark spec / fixture document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace bolaa
