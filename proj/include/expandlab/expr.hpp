#pragma once

// Set-expression language.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := scalar | identifier | '(' expr ')'
//            | 'sum' '(' expr ',' k ')' | 'prod' '(' expr ',' k ')' | 'R' '(' expr ')'
//
// Every operator has distinct-variable semantics: in (A-A)*(A-A) each of the
// four occurrences of A ranges over A independently. Scalars are singleton
// sets. There is no juxtaposition product; "AA" is an identifier.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "expandlab/finite_set.hpp"
#include "expandlab/rational.hpp"

namespace expandlab {

struct ExprNode;

/// Immutable expression tree handle; copies share structure.
class SetExpr {
 public:
  explicit SetExpr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  const ExprNode& node() const { return *node_; }

  template <class T>
  const T* as() const;

  friend bool operator==(const SetExpr& a, const SetExpr& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct SetName {
  std::string name;
};
struct ScalarLit {
  Rational value;
};
struct Binary {
  SetOp op;
  SetExpr left;
  SetExpr right;
};
enum class FoldKind { Sum, Prod };
struct KFold {
  FoldKind kind;
  SetExpr child;
  int k;
};
/// R[E] = {(a-b)/(a-c) : a, b, c in E, a != c}; the a is shared.
struct RTriple {
  SetExpr child;
};
struct Neg {
  SetExpr child;
};

struct ExprNode {
  std::variant<SetName, ScalarLit, Binary, KFold, RTriple, Neg> value;
};

template <class T>
const T* SetExpr::as() const {
  return std::get_if<T>(&node_->value);
}

namespace ex {
SetExpr name(std::string id);
SetExpr lit(Rational value);
SetExpr binary(SetOp op, SetExpr left, SetExpr right);
SetExpr sum(SetExpr child, int k);
SetExpr prod(SetExpr child, int k);
SetExpr r(SetExpr child);
SetExpr neg(SetExpr child);
}  // namespace ex

/// Throws ParseError carrying the character offset and the expected tokens.
SetExpr parse_expr(std::string_view text);

/// Minimal-parenthesis canonical text; parse_expr(print_expr(e)) == e.
std::string print_expr(const SetExpr& expr);

using Environment = std::map<std::string, FiniteSet, std::less<>>;

FiniteSet eval(const SetExpr& expr, const Environment& env, const Budget& budget = {});

std::set<std::string> free_names(const SetExpr& expr);

}  // namespace expandlab
