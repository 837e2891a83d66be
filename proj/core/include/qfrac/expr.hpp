#pragma once

// Small expression language for right-hand sides f(t, u) and test functions
// f(x).
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' exponent)?
//   exponent := '-' exponent | power
//   primary  := number | identifier | function '(' expr ')' | '(' expr ')'
//   function := exp | log | sin | cos | sqrt | abs
//   number   := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]   (or '.' digits ...)
//
// '^' binds tightest and associates to the right, so -2^2 = -4 and
// 2^3^2 = 512. There is no implicit multiplication.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfrac/errors.hpp"

namespace qfrac::expr {

/// Malformed source text. what() reads "line:col: message".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Evaluation outside a function's domain (log, sqrt, division, power).
class EvalError : public Error {
 public:
  using Error::Error;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Log, Sin, Cos, Sqrt, Abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct Variable {
  std::string name;
  std::size_t slot;  ///< index into Expr::variables()
};
struct Constant {
  std::string name;
  double value;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Variable, Constant, Negate, Binary, Call> kind;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Variables an expression may reference plus named constants folded in at
/// parse time.
struct Environment {
  std::vector<std::string> variables;
  std::map<std::string, double> constants;
};

/// Immutable parsed expression; cheap to copy and safe to share across threads.
class Expr {
 public:
  Expr(NodePtr root, std::vector<std::string> variables);

  const Node& root() const noexcept { return *root_; }
  /// Variable names in slot order.
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  /// Evaluates with slot values in the order of variables().
  double evaluate(std::span<const double> slots) const;

  /// Fully parenthesized source that parses back to the same tree.
  std::string to_string() const;

 private:
  NodePtr root_;
  std::vector<std::string> variables_;
};

Expr parse(std::string_view source, const Environment& env);
Expr parse(std::string_view source, const std::vector<std::string>& allowed_vars);

/// Evaluates with named bindings; every variable must be bound.
double evaluate(const Expr& expr, const std::map<std::string, double>& bindings);

/// Same shape and identical leaves.
bool structurally_equal(const Node& a, const Node& b);

}  // namespace qfrac::expr
