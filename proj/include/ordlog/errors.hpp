#pragma once

#include <stdexcept>
#include <string>

namespace ordlog {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or structural problem in an s-expression input, with a 1-based location.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Ids that do not resolve, duplicated domains, out-of-range indices.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class GrammarError : public Error {
 public:
  GrammarError(const std::string& what, std::string symbol = {})
      : Error(what), symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// A precondition on well-formedness did not hold (e.g. domain_tree on a non-laminar set).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Formula evaluation hit a grammar bug, e.g. a domain index beyond the word's domain count.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class LexicalGap : public Error {
 public:
  explicit LexicalGap(std::string token)
      : Error("no lexical entry for token \"" + token + "\""), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace ordlog
