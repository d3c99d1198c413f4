#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "expandlab/error.hpp"
#include "expandlab/expr.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace expandlab;

namespace {

SetExpr A() { return ex::name("A"); }
SetExpr diff() { return ex::binary(SetOp::Sub, A(), A()); }

SetExpr random_expr(testing::Gen& gen, int depth) {
  int pick = static_cast<int>(gen.integer(0, depth <= 0 ? 1 : 7));
  switch (pick) {
    case 0: return ex::name(gen.integer(0, 1) ? "A" : "B_2");
    case 1: return ex::lit(gen.rational());
    case 2:
    case 3:
    case 4: {
      auto op = static_cast<SetOp>(gen.integer(0, 3));
      return ex::binary(op, random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    }
    case 5: return ex::neg(random_expr(gen, depth - 1));
    case 6: return ex::r(random_expr(gen, depth - 1));
    default:
      return gen.integer(0, 1) ? ex::sum(random_expr(gen, depth - 1), static_cast<int>(gen.integer(1, 4)))
                               : ex::prod(random_expr(gen, depth - 1), static_cast<int>(gen.integer(1, 4)));
  }
}

}  // namespace

TEST_CASE("parse structure and precedence") {
  auto e = parse_expr("(A-A)*(A-A)*(A-A)");
  CHECK(e == ex::binary(SetOp::Mul, ex::binary(SetOp::Mul, diff(), diff()), diff()));

  auto f = parse_expr("(A+A)/(A+A)+A/A");
  const auto* top = f.as<Binary>();
  REQUIRE(top != nullptr);
  CHECK(top->op == SetOp::Add);
  CHECK(top->left.as<Binary>()->op == SetOp::Div);
  CHECK(top->right.as<Binary>()->op == SetOp::Div);

  CHECK(parse_expr("prod(A-A, 3)") == ex::prod(diff(), 3));
  CHECK(parse_expr("sum(A,2)") == ex::sum(A(), 2));
  CHECK(parse_expr("R(A)-1") == ex::binary(SetOp::Sub, ex::r(A()), ex::lit(1)));
  CHECK(parse_expr("A-B-C") == ex::binary(SetOp::Sub, ex::binary(SetOp::Sub, A(), ex::name("B")), ex::name("C")));
  CHECK(parse_expr("-A*B") == ex::binary(SetOp::Mul, ex::neg(A()), ex::name("B")));
  CHECK(parse_expr("-3/4") == ex::lit(Rational::normalize(-3, 4)));
  CHECK(parse_expr("A/0.5") == ex::binary(SetOp::Div, A(), ex::lit(Rational::normalize(1, 2))));
  CHECK(parse_expr("R") == ex::name("R"));
  CHECK(parse_expr("AA") == ex::name("AA"));
}

TEST_CASE("print examples") {
  CHECK(print_expr(diff()) == "A-A");
  CHECK(print_expr(ex::prod(diff(), 3)) == "prod(A-A,3)");
  CHECK(print_expr(ex::neg(A())) == "-A");
  CHECK(print_expr(parse_expr("((A+A))/(A+A) + (A/A)")) == "(A+A)/(A+A)+A/A");
  CHECK(print_expr(parse_expr("A-(B-C)")) == "A-(B-C)");
  CHECK(print_expr(parse_expr("A/(B*C)")) == "A/(B*C)");
  CHECK(print_expr(ex::binary(SetOp::Div, ex::lit(1), ex::lit(2))) == "1/(2)");
  CHECK(print_expr(ex::neg(ex::lit(2))) == "-(2)");
}

TEST_CASE("parse errors carry position and expected tokens") {
  auto check_error = [](const char* text, std::size_t position) {
    CAPTURE(text);
    try {
      parse_expr(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == position);
      CHECK_FALSE(e.expected().empty());
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  };
  check_error("A+", 2);
  check_error("(A-A", 4);
  check_error("2A", 1);
  check_error("A A", 2);
  check_error("A $ B", 2);
  check_error("prod(A,0)", 7);
  check_error("sum(A)", 5);
  check_error("prod(A,1.5)", 7);
  check_error("", 0);
}

TEST_CASE("print/parse round trip on random trees") {
  testing::Gen gen(4);
  for (int trial = 0; trial < 3000; ++trial) {
    SetExpr e = random_expr(gen, 4);
    std::string text = print_expr(e);
    CAPTURE(text);
    SetExpr back = parse_expr(text);
    CHECK(back == e);
    CHECK(print_expr(back) == text);
  }
}

TEST_CASE("parse(print(parse(t))) == parse(t) for hand-written inputs") {
  for (const char* t : {"(A-A)/(A-A)", "A*A+A", "- - A", "-(2)", "1/2/3", "1 / 2", "A/2/3",
                        "prod(R(A) - 1, 2)", "sum(-A,3)*0.125", "(A)", "x_1+Y2", "A--2", "2/-3"}) {
    CAPTURE(t);
    auto e = parse_expr(t);
    CHECK(parse_expr(print_expr(e)) == e);
  }
}

TEST_CASE("eval examples") {
  Environment env{{"A", FiniteSet{1, 2, 3}}};
  auto r = eval(parse_expr("R(A)"), env);
  CHECK(r == FiniteSet{-1, 0, Rational::normalize(1, 2), 1, 2});
  CHECK(r.size() == 5);
  auto q = eval(parse_expr("(A-A)/(A-A)"), env);
  CHECK(q == FiniteSet{-2, -1, Rational::normalize(-1, 2), 0, Rational::normalize(1, 2), 1, 2});
  CHECK(eval(parse_expr("A*A"), Environment{{"A", FiniteSet{1, 2}}}) == FiniteSet{1, 2, 4});
  CHECK(eval(parse_expr("R(A)-1"), env) == eval(parse_expr("-R(A)"), env));
  // A/A-1 = {(a-b)/b} shares b; (A-A)/A does not, so only containment holds.
  CHECK(is_subset(eval(parse_expr("A/A - 1"), env), eval(parse_expr("(A-A)/A"), env)));
  CHECK(eval(parse_expr("sum(A,2)"), env) == eval(parse_expr("A+A"), env));
  CHECK(eval(parse_expr("3"), env) == FiniteSet{3});
}

TEST_CASE("eval errors") {
  Environment env{{"A", FiniteSet{1, 2, 3}}};
  try {
    eval(parse_expr("A+B"), env);
    FAIL("expected UnboundName");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundName);
  }
  try {
    eval(parse_expr("A/(A-A+0*A)"), Environment{{"A", FiniteSet{0}}});
    FAIL("expected EmptyDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyDenominator);
  }
  try {
    eval(parse_expr("prod(A-A,4)"), env, Budget{5});
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("eval agrees with naive loops and is deterministic") {
  testing::Gen gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = gen.rational_set(static_cast<std::size_t>(gen.integer(2, 5)));
    auto v = oracle::values(a);
    Environment env{{"A", a}};
    CHECK(oracle::same(eval(parse_expr("(A-A)*(A-A)"), env),
                       oracle::products(oracle::to_values(oracle::differences(v, v)),
                                        oracle::to_values(oracle::differences(v, v)))));
    CHECK(oracle::same(eval(parse_expr("R(A)"), env), oracle::r_triples(v)));
    CHECK(eval(parse_expr("(A+A)/(A-A)"), env) == eval(parse_expr("(A+A)/(A-A)"), env));
  }
}

TEST_CASE("free names") {
  CHECK(free_names(parse_expr("A*B+prod(C,2)-R(A)")) == std::set<std::string>{"A", "B", "C"});
}
