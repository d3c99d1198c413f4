#include "expandlab/expr.hpp"

#include <cctype>
#include <climits>
#include <vector>

#include "expandlab/error.hpp"

namespace expandlab {

namespace ex {

namespace {
SetExpr make(ExprNode node) { return SetExpr(std::make_shared<const ExprNode>(std::move(node))); }
}  // namespace

SetExpr name(std::string id) { return make({SetName{std::move(id)}}); }
SetExpr lit(Rational value) { return make({ScalarLit{std::move(value)}}); }
SetExpr binary(SetOp op, SetExpr left, SetExpr right) {
  return make({Binary{op, std::move(left), std::move(right)}});
}
SetExpr sum(SetExpr child, int k) { return make({KFold{FoldKind::Sum, std::move(child), k}}); }
SetExpr prod(SetExpr child, int k) { return make({KFold{FoldKind::Prod, std::move(child), k}}); }
SetExpr r(SetExpr child) { return make({RTriple{std::move(child)}}); }
SetExpr neg(SetExpr child) { return make({Neg{std::move(child)}}); }

}  // namespace ex

bool operator==(const SetExpr& a, const SetExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node().value;
  const auto& y = b.node().value;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(y);
        if constexpr (std::is_same_v<T, SetName>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<T, ScalarLit>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return lhs.op == rhs.op && lhs.left == rhs.left && lhs.right == rhs.right;
        } else if constexpr (std::is_same_v<T, KFold>) {
          return lhs.kind == rhs.kind && lhs.k == rhs.k && lhs.child == rhs.child;
        } else {
          return lhs.child == rhs.child;
        }
      },
      x);
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      while (i < text.size() && is_digit(text[i])) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && is_digit(text[i])) ++i;
      } else if (i + 1 < text.size() && text[i] == '/' && is_digit(text[i + 1])) {
        // "p/q" with no spaces is a single rational literal.
        ++i;
        while (i < text.size() && is_digit(text[i])) ++i;
      }
      out.push_back({Tok::Number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      default:
        throw ParseError(start, {"identifier", "number", "operator", "(", ")", ","},
                         std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  SetExpr parse_all() {
    SetExpr e = expression();
    if (peek().kind != Tok::End) {
      fail({"+", "-", "*", "/", "end of input"}, "unexpected '" + peek().text + "'");
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& message) const {
    throw ParseError(peek().pos, std::move(expected), message);
  }

  void expect(Tok kind, const char* spelling) {
    if (peek().kind != kind) {
      fail({spelling}, peek().kind == Tok::End ? "unexpected end of input"
                                                : "unexpected '" + peek().text + "'");
    }
    ++pos_;
  }

  SetExpr expression() {
    SetExpr left = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      SetOp op = take().kind == Tok::Plus ? SetOp::Add : SetOp::Sub;
      left = ex::binary(op, std::move(left), term());
    }
    return left;
  }

  SetExpr term() {
    SetExpr left = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      SetOp op = take().kind == Tok::Star ? SetOp::Mul : SetOp::Div;
      left = ex::binary(op, std::move(left), unary());
    }
    return left;
  }

  SetExpr unary() {
    if (peek().kind == Tok::Minus) {
      ++pos_;
      // A minus directly on a numeric literal folds into a negative literal.
      if (peek().kind == Tok::Number) return ex::lit(-number());
      return ex::neg(unary());
    }
    return primary();
  }

  Rational number() {
    const Token& t = take();
    try {
      return Rational::parse(t.text);
    } catch (const ParseError&) {
      throw ParseError(t.pos, {"number"}, "malformed number '" + t.text + "'");
    }
  }

  int fold_count() {
    if (peek().kind != Tok::Number) fail({"positive integer"}, "expected a fold count");
    std::size_t at = peek().pos;
    Rational k = number();
    if (!k.is_integer() || k.sign() <= 0 || k > Rational(INT_MAX)) {
      throw ParseError(at, {"positive integer"}, "fold count must be a positive integer");
    }
    return static_cast<int>(k.numerator().get_si());
  }

  SetExpr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        return ex::lit(number());
      case Tok::LParen: {
        ++pos_;
        SetExpr inner = expression();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident: {
        std::string id = take().text;
        if (peek().kind != Tok::LParen || (id != "sum" && id != "prod" && id != "R")) {
          return ex::name(std::move(id));
        }
        ++pos_;
        SetExpr arg = expression();
        if (id == "R") {
          expect(Tok::RParen, ")");
          return ex::r(std::move(arg));
        }
        expect(Tok::Comma, ",");
        int k = fold_count();
        expect(Tok::RParen, ")");
        return id == "sum" ? ex::sum(std::move(arg), k) : ex::prod(std::move(arg), k);
      }
      default:
        fail({"identifier", "number", "(", "-"},
             t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SetExpr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

enum Prec { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kAtom = 4 };

int precedence(const SetExpr& e) {
  if (const auto* b = e.as<Binary>()) {
    return (b->op == SetOp::Add || b->op == SetOp::Sub) ? kAdditive : kMultiplicative;
  }
  if (e.as<Neg>()) return kUnary;
  if (const auto* l = e.as<ScalarLit>()) return l->value.sign() < 0 ? kUnary : kAtom;
  return kAtom;
}

std::string print(const SetExpr& e);

std::string wrapped(const SetExpr& e, bool parens) {
  std::string s = print(e);
  return parens ? "(" + s + ")" : s;
}

std::string print(const SetExpr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SetName>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, ScalarLit>) {
          return n.value.to_string();
        } else if constexpr (std::is_same_v<T, Binary>) {
          int p = precedence(e);
          std::string left = wrapped(n.left, precedence(n.left) < p);
          std::string right = wrapped(n.right, precedence(n.right) <= p);
          // "2" "/" "3" would lex back as the single literal 2/3.
          if (n.op == SetOp::Div && !left.empty() && is_digit(left.back()) && !right.empty() &&
              is_digit(right.front())) {
            right = "(" + right + ")";
          }
          return left + symbol(n.op) + right;
        } else if constexpr (std::is_same_v<T, KFold>) {
          return std::string(n.kind == FoldKind::Sum ? "sum(" : "prod(") + print(n.child) + "," +
                 std::to_string(n.k) + ")";
        } else if constexpr (std::is_same_v<T, RTriple>) {
          return "R(" + print(n.child) + ")";
        } else {
          // "-2" would read back as a negative literal, so literals are wrapped.
          bool parens = precedence(n.child) < kUnary || n.child.template as<ScalarLit>() != nullptr;
          return "-" + wrapped(n.child, parens);
        }
      },
      e.node().value);
}

}  // namespace

std::string print_expr(const SetExpr& expr) { return print(expr); }

// ---------------------------------------------------------------------------
// Evaluation

FiniteSet eval(const SetExpr& expr, const Environment& env, const Budget& budget) {
  return std::visit(
      [&](const auto& n) -> FiniteSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SetName>) {
          auto it = env.find(n.name);
          if (it == env.end()) throw Error(ErrorKind::UnboundName, "set '" + n.name + "' is not bound");
          return it->second;
        } else if constexpr (std::is_same_v<T, ScalarLit>) {
          return FiniteSet{n.value};
        } else if constexpr (std::is_same_v<T, Binary>) {
          FiniteSet left = eval(n.left, env, budget);
          FiniteSet right = eval(n.right, env, budget);
          return pairwise(n.op, left, right, budget);
        } else if constexpr (std::is_same_v<T, KFold>) {
          return kfold(n.kind == FoldKind::Sum ? SetOp::Add : SetOp::Mul, eval(n.child, env, budget), n.k,
                       budget);
        } else if constexpr (std::is_same_v<T, RTriple>) {
          return triple_ratio_set(eval(n.child, env, budget), budget);
        } else {
          return affine(eval(n.child, env, budget), Rational(-1), Rational(0));
        }
      },
      expr.node().value);
}

namespace {

void collect_names(const SetExpr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SetName>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_names(n.left, out);
          collect_names(n.right, out);
        } else if constexpr (std::is_same_v<T, KFold> || std::is_same_v<T, RTriple> ||
                             std::is_same_v<T, Neg>) {
          collect_names(n.child, out);
        }
      },
      e.node().value);
}

}  // namespace

std::set<std::string> free_names(const SetExpr& expr) {
  std::set<std::string> out;
  collect_names(expr, out);
  return out;
}

}  // namespace expandlab
