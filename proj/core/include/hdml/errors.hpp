#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdml {

// Root of every exception thrown by the library. Callers that only need to
// distinguish "bad input" from programming errors can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownCellError : public Error {
 public:
  explicit UnknownCellError(const std::string& cell);
  const std::string& cell() const noexcept { return cell_; }

 private:
  std::string cell_;
};

class MissingLabelError : public Error {
 public:
  explicit MissingLabelError(const std::string& cell);
  const std::string& cell() const noexcept { return cell_; }

 private:
  std::string cell_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbolError : public Error {
 public:
  UnknownSymbolError(std::size_t position, const std::string& symbol);
  std::size_t position() const noexcept { return position_; }
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::size_t position_;
  std::string symbol_;
};

// Malformed input documents (JSON shape, dangling references in files).
class FormatError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// Structured input that violates a well-formedness clause (trace posets,
// configuration families, split-label extraction).
class WellFormednessError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdml
