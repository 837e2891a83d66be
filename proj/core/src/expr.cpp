#include "qfrac/expr.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qfrac::expr {
namespace {

struct FunctionName {
  std::string_view name;
  Function fn;
};

constexpr FunctionName kFunctions[] = {
    {"exp", Function::Exp},   {"log", Function::Log}, {"sin", Function::Sin},
    {"cos", Function::Cos},   {"sqrt", Function::Sqrt}, {"abs", Function::Abs},
};

std::string_view function_name(Function fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

char op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Parser {
 public:
  Parser(std::string_view src, const Environment& env) : src_(src), env_(env) {}

  NodePtr parse_all() {
    skip_space();
    if (at_end()) fail(pos_, "expected expression");
    NodePtr root = parse_expr();
    skip_space();
    if (!at_end()) fail(pos_, std::string("unexpected '") + src_[pos_] + "'");
    return root;
  }

 private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_space();
      if (at_end() || (peek() != '+' && peek() != '-')) return lhs;
      const std::size_t at = pos_;
      const BinaryOp op = src_[pos_++] == '+' ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make(Binary{op, lhs, parse_term()}, at);
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_space();
      if (at_end() || (peek() != '*' && peek() != '/')) return lhs;
      const std::size_t at = pos_;
      const BinaryOp op = src_[pos_++] == '*' ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make(Binary{op, lhs, parse_unary()}, at);
    }
  }

  NodePtr parse_unary() {
    skip_space();
    if (!at_end() && peek() == '-') {
      const std::size_t at = pos_++;
      return make(Negate{parse_unary()}, at);
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_space();
    if (at_end() || peek() != '^') return base;
    const std::size_t at = pos_++;
    return make(Binary{BinaryOp::Pow, base, parse_exponent()}, at);
  }

  NodePtr parse_exponent() {
    skip_space();
    if (!at_end() && peek() == '-') {
      const std::size_t at = pos_++;
      return make(Negate{parse_exponent()}, at);
    }
    return parse_power();
  }

  NodePtr parse_primary() {
    skip_space();
    if (at_end()) fail(pos_, "expected expression");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(pos_, "expected expression");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, ++n;
      return n;
    };
    std::size_t count = digits();
    if (!at_end() && peek() == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail(start, "malformed number");
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (digits() == 0) fail(pos_, "expected exponent digits");
    }
    const std::string text(src_.substr(start, pos_ - start));
    errno = 0;
    const double value = std::strtod(text.c_str(), nullptr);
    if (errno == ERANGE && !std::isfinite(value)) fail(start, "number out of range");
    return make(Number{value}, start);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    for (const auto& f : kFunctions) {
      if (f.name != name) continue;
      skip_space();
      if (at_end() || peek() != '(') fail(pos_, "expected '(' after function '" + name + "'");
      ++pos_;
      NodePtr arg = parse_expr();
      expect(')');
      return make(Call{f.fn, arg}, start);
    }
    for (std::size_t i = 0; i < env_.variables.size(); ++i)
      if (env_.variables[i] == name) return make(Variable{name, i}, start);
    if (auto it = env_.constants.find(name); it != env_.constants.end())
      return make(Constant{name, it->second}, start);
    skip_space();
    if (!at_end() && peek() == '(') fail(start, "unknown function '" + name + "'");
    fail(start, "unknown identifier '" + name + "' (allowed: " + allowed_list() + ")");
  }

  std::string allowed_list() const {
    std::string out;
    for (const auto& v : env_.variables) out += (out.empty() ? "" : ", ") + v;
    for (const auto& [k, v] : env_.constants) out += (out.empty() ? "" : ", ") + k;
    return out.empty() ? "none" : out;
  }

  void expect(char c) {
    skip_space();
    if (at_end() || peek() != c) fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  template <typename T>
  NodePtr make(T&& kind, std::size_t offset) const {
    auto [line, col] = location(offset);
    return std::make_shared<const Node>(Node{std::forward<T>(kind), line, col});
  }

  std::pair<std::size_t, std::size_t> location(std::size_t offset) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& message) const {
    auto [line, col] = location(offset);
    throw ParseError(line, col, message);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  std::string_view src_;
  const Environment& env_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_failure(const Node& node, const std::string& what) {
  std::ostringstream os;
  os << node.line << ":" << node.column << ": " << what;
  throw EvalError(os.str());
}

double real_power(const Node& node, double base, double exponent) {
  if (base < 0.0) {
    const double rounded = std::round(exponent);
    if (std::fabs(exponent - rounded) > 1e-9)
      domain_failure(node, "negative base " + format_number(base) + " with non-integer exponent " +
                               format_number(exponent));
    exponent = rounded;
  }
  if (base == 0.0 && exponent < 0.0) domain_failure(node, "zero raised to a negative power");
  return std::pow(base, exponent);
}

double eval_node(const Node& node, std::span<const double> slots) {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Number>) {
          return k.value;
        } else if constexpr (std::is_same_v<K, Variable>) {
          return slots[k.slot];
        } else if constexpr (std::is_same_v<K, Constant>) {
          return k.value;
        } else if constexpr (std::is_same_v<K, Negate>) {
          return -eval_node(*k.operand, slots);
        } else if constexpr (std::is_same_v<K, Binary>) {
          const double l = eval_node(*k.lhs, slots);
          const double r = eval_node(*k.rhs, slots);
          switch (k.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div:
              if (r == 0.0) domain_failure(node, "division by zero");
              return l / r;
            case BinaryOp::Pow: return real_power(node, l, r);
          }
          return 0.0;
        } else {
          const double v = eval_node(*k.arg, slots);
          switch (k.fn) {
            case Function::Exp: return std::exp(v);
            case Function::Log:
              if (!(v > 0.0)) domain_failure(node, "log of nonpositive argument " + format_number(v));
              return std::log(v);
            case Function::Sin: return std::sin(v);
            case Function::Cos: return std::cos(v);
            case Function::Sqrt:
              if (v < 0.0) domain_failure(node, "sqrt of negative argument " + format_number(v));
              return std::sqrt(v);
            case Function::Abs: return std::fabs(v);
          }
          return 0.0;
        }
      },
      node.kind);
}

void print_node(const Node& node, std::string& out) {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Number>) {
          out += format_number(k.value);
        } else if constexpr (std::is_same_v<K, Variable> || std::is_same_v<K, Constant>) {
          out += k.name;
        } else if constexpr (std::is_same_v<K, Negate>) {
          out += "(-";
          print_node(*k.operand, out);
          out += ")";
        } else if constexpr (std::is_same_v<K, Binary>) {
          out += "(";
          print_node(*k.lhs, out);
          out += ' ';
          out += op_symbol(k.op);
          out += ' ';
          print_node(*k.rhs, out);
          out += ")";
        } else {
          out += function_name(k.fn);
          out += "(";
          print_node(*k.arg, out);
          out += ")";
        }
      },
      node.kind);
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

Expr::Expr(NodePtr root, std::vector<std::string> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {}

double Expr::evaluate(std::span<const double> slots) const {
  if (slots.size() < variables_.size()) throw EvalError("evaluate: missing variable values");
  return eval_node(*root_, slots);
}

std::string Expr::to_string() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

Expr parse(std::string_view source, const Environment& env) {
  Parser parser(source, env);
  NodePtr root = parser.parse_all();
  return Expr(std::move(root), env.variables);
}

Expr parse(std::string_view source, const std::vector<std::string>& allowed_vars) {
  return parse(source, Environment{allowed_vars, {}});
}

double evaluate(const Expr& expr, const std::map<std::string, double>& bindings) {
  std::vector<double> slots;
  slots.reserve(expr.variables().size());
  for (const auto& name : expr.variables()) {
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      // Unused variables may stay unbound.
      slots.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    slots.push_back(it->second);
  }
  return expr.evaluate(slots);
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind.index() != b.kind.index()) return false;
  return std::visit(
      [&](const auto& ka) -> bool {
        using K = std::decay_t<decltype(ka)>;
        const auto& kb = std::get<K>(b.kind);
        if constexpr (std::is_same_v<K, Number>) {
          return ka.value == kb.value;
        } else if constexpr (std::is_same_v<K, Variable>) {
          return ka.name == kb.name && ka.slot == kb.slot;
        } else if constexpr (std::is_same_v<K, Constant>) {
          return ka.name == kb.name && ka.value == kb.value;
        } else if constexpr (std::is_same_v<K, Negate>) {
          return structurally_equal(*ka.operand, *kb.operand);
        } else if constexpr (std::is_same_v<K, Binary>) {
          return ka.op == kb.op && structurally_equal(*ka.lhs, *kb.lhs) &&
                 structurally_equal(*ka.rhs, *kb.rhs);
        } else {
          return ka.fn == kb.fn && structurally_equal(*ka.arg, *kb.arg);
        }
      },
      a.kind);
}

}  // namespace qfrac::expr
