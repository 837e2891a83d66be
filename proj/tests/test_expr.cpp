#include <cmath>
#include <cstring>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "qfrac/expr.hpp"

using namespace qfrac::expr;

namespace {

const std::vector<std::string> kTU = {"t", "u"};

double eval1(const std::string& src, std::map<std::string, double> b = {}) {
  std::vector<std::string> vars;
  for (const auto& [k, v] : b) vars.push_back(k);
  return evaluate(parse(src, vars), b);
}

std::string parse_error(const std::string& src, const std::vector<std::string>& vars = {}) {
  try {
    parse(src, vars);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST(Parse, Examples) {
  const auto u = parse("u", kTU);
  ASSERT_TRUE(std::holds_alternative<Variable>(u.root().kind));
  EXPECT_EQ(std::get<Variable>(u.root().kind).name, "u");
  EXPECT_EQ(std::get<Variable>(u.root().kind).slot, 1u);
  EXPECT_EQ(evaluate(parse("t^2 + 3*u", kTU), {{"t", 2.0}, {"u", 1.0}}), 7.0);
  EXPECT_EQ(eval1("2^3^2"), 512.0);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(eval1("5"), 5.0);
  EXPECT_EQ(eval1("exp(0)"), 1.0);
  EXPECT_EQ(eval1("u - u", {{"u", 3.7}}), 0.0);
}

TEST(Parse, Numbers) {
  EXPECT_EQ(eval1("1.5e2"), 150.0);
  EXPECT_EQ(eval1(".25"), 0.25);
  EXPECT_EQ(eval1("3."), 3.0);
  EXPECT_EQ(eval1("2E-1"), 0.2);
  EXPECT_EQ(parse_error("1e"), "1:3: expected exponent digits");
  EXPECT_EQ(parse_error("1e999"), "1:1: number out of range");
  EXPECT_EQ(parse_error("."), "1:1: malformed number");
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("x +", {"x"}), "1:4: expected expression");
  EXPECT_EQ(parse_error(""), "1:1: expected expression");
  EXPECT_EQ(parse_error("2t", {"t"}), "1:2: unexpected 't'");
  EXPECT_EQ(parse_error("(1 + 2", {}), "1:7: expected ')'");
  EXPECT_EQ(parse_error("y", {"t", "u"}), "1:1: unknown identifier 'y' (allowed: t, u)");
  EXPECT_EQ(parse_error("foo(1)"), "1:1: unknown function 'foo'");
  EXPECT_EQ(parse_error("exp 1"), "1:5: expected '(' after function 'exp'");
  EXPECT_EQ(parse_error("1 +\n  * 2"), "2:3: expected expression");
  EXPECT_EQ(parse_error("t_1", {"t"}), "1:2: unexpected '_'");
}

TEST(Parse, Constants) {
  const Environment env{{"x"}, {{"q", 0.5}, {"alpha", 0.25}}};
  const auto e = parse("x^alpha * q", env);
  const double x[] = {16.0};
  EXPECT_EQ(e.evaluate(x), 1.0);
  EXPECT_EQ(parse_error("p", {"x"}), "1:1: unknown identifier 'p' (allowed: x)");
}

TEST(Evaluate, DomainErrors) {
  EXPECT_THROW(eval1("log(0)"), EvalError);
  EXPECT_THROW(eval1("log(-1)"), EvalError);
  EXPECT_THROW(eval1("sqrt(-1)"), EvalError);
  EXPECT_THROW(eval1("1/(u-u)", {{"u", 2.0}}), EvalError);
  EXPECT_THROW(eval1("0^-1"), EvalError);
  EXPECT_THROW(eval1("(-8)^(1/3)"), EvalError);
  EXPECT_EQ(eval1("(-2)^3"), -8.0);
  EXPECT_EQ(eval1("(-2)^(2 + 1e-12)"), 4.0);
  try {
    eval1("1 + log(u)", {{"u", -1.0}});
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(std::string(e.what()), "1:5: log of nonpositive argument -1");
  }
}

TEST(Evaluate, Functions) {
  EXPECT_DOUBLE_EQ(eval1("sin(u)^2 + cos(u)^2", {{"u", 0.7}}), 1.0);
  EXPECT_EQ(eval1("abs(-3)"), 3.0);
  EXPECT_EQ(eval1("sqrt(16)"), 4.0);
  EXPECT_DOUBLE_EQ(eval1("log(exp(2))"), 2.0);
}

TEST(Evaluate, MissingBindingsAreNaN) {
  const auto e = parse("t + u", kTU);
  EXPECT_TRUE(std::isnan(evaluate(e, {{"t", 1.0}})));
  // unused variables may stay unbound
  EXPECT_EQ(evaluate(parse("t", kTU), {{"t", 2.0}}), 2.0);
}

// 20 fixed expressions with hand-computed values.
TEST(ExprProperty, PrecedenceTable) {
  const std::map<std::string, double> b{{"t", 2.0}, {"u", 3.0}};
  const std::pair<const char*, double> table[] = {
      {"1 + 2 * 3", 7},          {"(1 + 2) * 3", 9},       {"2 ^ 3 ^ 2", 512},
      {"(2 ^ 3) ^ 2", 64},       {"-2 ^ 2", -4},           {"(-2) ^ 2", 4},
      {"2 ^ -1", 0.5},           {"2 ^ -1 ^ 2", 0.5},      {"8 / 4 / 2", 1},
      {"8 - 4 - 2", 2},          {"- - 3", 3},             {"2 * -3", -6},
      {"t ^ 2 * u", 12},         {"u - t * t", -1},        {"t * u ^ 2", 18},
      {"-t ^ 2 + u", -1},        {"1 - -1", 2},            {"2 ^ 2 ^ -1", std::sqrt(2.0)},
      {"(t + u) / (u - t)", 5},  {"abs(t - u) * 10 / 4", 2.5},
  };
  for (const auto& [src, want] : table) {
    const auto e = parse(src, kTU);
    EXPECT_EQ(evaluate(e, b), want) << src;
  }
}

namespace {

// Random expression text over t, u and the function set.
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
  switch (k) {
    case 0: return "t";
    case 1: return "u";
    case 2: {
      std::uniform_real_distribution<double> v(0.0, 10.0);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", v(rng));
      return buf;
    }
    case 3: return "-" + random_expr(rng, depth - 1);
    case 4: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 5: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 7: return random_expr(rng, depth - 1) + " / " + random_expr(rng, depth - 1);
    case 8: return "(" + random_expr(rng, depth - 1) + ")^" + random_expr(rng, 0);
    default: {
      static const char* fns[] = {"exp", "log", "sin", "cos", "sqrt", "abs"};
      return std::string(fns[pick(rng) % 6]) + "(" + random_expr(rng, depth - 1) + ")";
    }
  }
}

}  // namespace

TEST(ExprProperty, RoundTrip) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const std::string src = random_expr(rng, 5);
    const auto e = parse(src, kTU);
    const auto printed = e.to_string();
    const auto again = parse(printed, kTU);
    EXPECT_TRUE(structurally_equal(e.root(), again.root())) << src << " -> " << printed;
    EXPECT_EQ(again.to_string(), printed);
  }
}

TEST(ExprProperty, Purity) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> v(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const auto e = parse(random_expr(rng, 4), kTU);
    const double slots[] = {v(rng), v(rng)};
    double first = 0.0;
    bool ok = true;
    try {
      first = e.evaluate(slots);
    } catch (const EvalError&) {
      ok = false;
    }
    for (int rep = 0; rep < 5; ++rep) {
      if (!ok) {
        EXPECT_THROW(e.evaluate(slots), EvalError);
        continue;
      }
      const double again = e.evaluate(slots);
      // bit-identical, NaN included
      EXPECT_EQ(std::memcmp(&first, &again, sizeof(double)), 0);
    }
  }
}

TEST(ExprProperty, SharedAcrossThreads) {
  const auto e = parse("sin(t) * exp(u) + t ^ 2.5", kTU);
  const double slots[] = {0.7, 1.3};
  const double want = e.evaluate(slots);
  std::vector<std::thread> pool;
  std::vector<double> got(8);
  for (std::size_t i = 0; i < got.size(); ++i)
    pool.emplace_back([&, i] {
      for (int k = 0; k < 1000; ++k) got[i] = e.evaluate(slots);
    });
  for (auto& th : pool) th.join();
  for (double g : got) EXPECT_EQ(g, want);
}
