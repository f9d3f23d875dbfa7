#include "fracvx/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "fracvx/errors.hpp"

namespace fracvx {
namespace detail {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Fn { Sin, Cos, Exp, Ln, Sqrt, Pow };

struct Expr {
  Op op = Op::Number;
  double number = 0.0;
  Fn fn = Fn::Sin;
  std::shared_ptr<const Expr> a, b;
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace {

ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Number;
  e->number = v;
  return e;
}

ExprPtr make_node(Op op, ExprPtr a, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr make_call(Fn fn, ExprPtr a, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Call;
  e->fn = fn;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

bool is_integer_exponent(const Expr& e, long* out) {
  if (e.op != Op::Number) return false;
  if (e.number != std::floor(e.number) || std::fabs(e.number) > 1024.0) {
    return false;
  }
  *out = static_cast<long>(e.number);
  return true;
}

double eval_value(const Expr& e, double t) {
  switch (e.op) {
    case Op::Number: return e.number;
    case Op::Var:    return t;
    case Op::Neg:    return -eval_value(*e.a, t);
    case Op::Add:    return eval_value(*e.a, t) + eval_value(*e.b, t);
    case Op::Sub:    return eval_value(*e.a, t) - eval_value(*e.b, t);
    case Op::Mul:    return eval_value(*e.a, t) * eval_value(*e.b, t);
    case Op::Div:    return eval_value(*e.a, t) / eval_value(*e.b, t);
    case Op::Pow: {
      const double base = eval_value(*e.a, t);
      long n;
      if (is_integer_exponent(*e.b, &n)) {
        return ipow(Jet2::constant(base), n).v;
      }
      const double ex = eval_value(*e.b, t);
      if (ex == std::floor(ex) && std::fabs(ex) <= 1024.0) {
        return ipow(Jet2::constant(base), static_cast<long>(ex)).v;
      }
      if (base == 0.0 && ex > 0.0) return 0.0;
      if (!(base > 0.0)) {
        throw DomainError(
            "pow: base must be positive for non-integer exponent");
      }
      return std::exp(ex * std::log(base));
    }
    case Op::Call: {
      const double x = eval_value(*e.a, t);
      switch (e.fn) {
        case Fn::Sin:  return std::sin(x);
        case Fn::Cos:  return std::cos(x);
        case Fn::Exp:  return std::exp(x);
        case Fn::Ln:
          if (!(x > 0.0)) throw DomainError("ln: argument must be positive");
          return std::log(x);
        case Fn::Sqrt:
          if (x < 0.0) throw DomainError("sqrt: argument must be nonnegative");
          return std::sqrt(x);
        case Fn::Pow: {
          const double y = eval_value(*e.b, t);
          if (x == 0.0 && y > 0.0) return 0.0;
          return fracvx::pow(Jet2::constant(x), Jet2::constant(y)).v;
        }
      }
      break;
    }
  }
  throw Error("corrupt expression tree");
}

Jet2 eval_jet(const Expr& e, double t) {
  switch (e.op) {
    case Op::Number: return Jet2::constant(e.number);
    case Op::Var:    return Jet2::variable(t);
    case Op::Neg:    return -eval_jet(*e.a, t);
    case Op::Add:    return eval_jet(*e.a, t) + eval_jet(*e.b, t);
    case Op::Sub:    return eval_jet(*e.a, t) - eval_jet(*e.b, t);
    case Op::Mul:    return eval_jet(*e.a, t) * eval_jet(*e.b, t);
    case Op::Div:    return eval_jet(*e.a, t) / eval_jet(*e.b, t);
    case Op::Pow:    return fracvx::pow(eval_jet(*e.a, t), eval_jet(*e.b, t));
    case Op::Call: {
      const Jet2 x = eval_jet(*e.a, t);
      switch (e.fn) {
        case Fn::Sin:  return fracvx::sin(x);
        case Fn::Cos:  return fracvx::cos(x);
        case Fn::Exp:  return fracvx::exp(x);
        case Fn::Ln:   return fracvx::log(x);
        case Fn::Sqrt: return fracvx::sqrt(x);
        case Fn::Pow:  return fracvx::pow(x, eval_jet(*e.b, t));
      }
      break;
    }
  }
  throw Error("corrupt expression tree");
}

// ---------------------------------------------------------------------------
// Constant folding
// ---------------------------------------------------------------------------

bool depends_on_t(const Expr& e) {
  switch (e.op) {
    case Op::Number: return false;
    case Op::Var:    return true;
    default:
      if (e.a && depends_on_t(*e.a)) return true;
      if (e.b && depends_on_t(*e.b)) return true;
      return false;
  }
}

ExprPtr fold(const ExprPtr& node) {
  auto e = std::make_shared<Expr>(*node);
  if (e->a) e->a = fold(e->a);
  if (e->b) e->b = fold(e->b);
  if (e->op != Op::Number && !depends_on_t(*e)) {
    try {
      return make_number(eval_value(*e, 0.0));
    } catch (const DomainError&) {
      // Leave the subtree unfolded; the error surfaces at evaluation time.
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { Number, Ident, Symbol, End } kind;
  double number = 0.0;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) {
      ++i_;
    }
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text = "<end of input>";
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
      const char* first = src_.data() + i_;
      const char* last = src_.data() + src_.size();
      double value = 0.0;
      auto res = std::from_chars(first, last, value);
      if (res.ec != std::errc()) {
        throw ParseError("malformed number at position " + std::to_string(i_),
                         i_);
      }
      tok_.kind = Token::Kind::Number;
      tok_.number = value;
      tok_.text = std::string(first, res.ptr);
      i_ += static_cast<std::size_t>(res.ptr - first);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) ||
              src_[j] == '_')) {
        ++j;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    tok_.kind = Token::Kind::Symbol;
    tok_.text = std::string(1, c);
    ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End) {
      throw ParseError("syntax error at position " + std::to_string(t.pos) +
                           ": unexpected '" + t.text + "'",
                       t.pos);
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& expected) {
    throw ParseError("syntax error at position " + std::to_string(t.pos) +
                         ": expected " + expected + ", found '" + t.text + "'",
                     t.pos);
  }

  bool accept_symbol(const char* s) {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Symbol && t.text == s) {
      lex_.take();
      return true;
    }
    return false;
  }

  void expect_symbol(const char* s) {
    if (!accept_symbol(s)) fail(lex_.peek(), std::string("'") + s + "'");
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept_symbol("+")) {
        e = make_node(Op::Add, e, parse_term());
      } else if (accept_symbol("-")) {
        e = make_node(Op::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    for (;;) {
      if (accept_symbol("*")) {
        e = make_node(Op::Mul, e, parse_factor());
      } else if (accept_symbol("/")) {
        e = make_node(Op::Div, e, parse_factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_factor() {
    if (accept_symbol("-")) {
      return make_node(Op::Neg, parse_factor());
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (accept_symbol("^")) {
      // Right associative; the exponent may carry a sign: 2^-3.
      return make_node(Op::Pow, base, parse_factor());
    }
    return base;
  }

  ExprPtr parse_primary() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Number:
        return make_number(t.number);
      case Token::Kind::Ident: {
        if (t.text == "t") return make_node(Op::Var, nullptr);
        Fn fn;
        int arity = 1;
        if (t.text == "sin") fn = Fn::Sin;
        else if (t.text == "cos") fn = Fn::Cos;
        else if (t.text == "exp") fn = Fn::Exp;
        else if (t.text == "ln") fn = Fn::Ln;
        else if (t.text == "sqrt") fn = Fn::Sqrt;
        else if (t.text == "pow") { fn = Fn::Pow; arity = 2; }
        else {
          throw ParseError("unknown identifier '" + t.text +
                               "' at position " + std::to_string(t.pos),
                           t.pos);
        }
        expect_symbol("(");
        ExprPtr a = parse_expr();
        ExprPtr b;
        if (arity == 2) {
          expect_symbol(",");
          b = parse_expr();
        }
        expect_symbol(")");
        return make_call(fn, a, b);
      }
      case Token::Kind::Symbol:
        if (t.text == "(") {
          ExprPtr e = parse_expr();
          expect_symbol(")");
          return e;
        }
        fail(t, "a number, 't', a function call, or '('");
      case Token::Kind::End:
        fail(t, "an expression");
    }
    fail(t, "an expression");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string print_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_atom(const Expr& e) {
  return e.op == Op::Var || e.op == Op::Call ||
         (e.op == Op::Number && !(e.number < 0.0) &&
          std::isfinite(e.number));
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, std::string& out, bool parens) {
  if (parens && !is_atom(child)) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.op) {
    case Op::Number: out += print_number(e.number); return;
    case Op::Var:    out += 't'; return;
    case Op::Neg:
      out += '-';
      print_child(*e.a, out, true);
      return;
    case Op::Add:
      print(*e.a, out); out += " + "; print(*e.b, out); return;
    case Op::Sub:
      print(*e.a, out);
      out += " - ";
      print_child(*e.b, out,
                  e.b->op == Op::Add || e.b->op == Op::Sub ||
                      e.b->op == Op::Neg);
      return;
    case Op::Mul:
      print_child(*e.a, out,
                  e.a->op == Op::Add || e.a->op == Op::Sub ||
                      e.a->op == Op::Neg);
      out += "*";
      print_child(*e.b, out,
                  e.b->op == Op::Add || e.b->op == Op::Sub ||
                      e.b->op == Op::Neg);
      return;
    case Op::Div:
      print_child(*e.a, out,
                  e.a->op == Op::Add || e.a->op == Op::Sub ||
                      e.a->op == Op::Neg);
      out += "/";
      print_child(*e.b, out, !is_atom(*e.b));
      return;
    case Op::Pow:
      print_child(*e.a, out, !is_atom(*e.a));
      out += "^";
      print_child(*e.b, out, !is_atom(*e.b));
      return;
    case Op::Call: {
      switch (e.fn) {
        case Fn::Sin:  out += "sin"; break;
        case Fn::Cos:  out += "cos"; break;
        case Fn::Exp:  out += "exp"; break;
        case Fn::Ln:   out += "ln"; break;
        case Fn::Sqrt: out += "sqrt"; break;
        case Fn::Pow:  out += "pow"; break;
      }
      out += '(';
      print(*e.a, out);
      if (e.b) {
        out += ", ";
        print(*e.b, out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace
}  // namespace detail

ScalarFunc::ScalarFunc(std::shared_ptr<const detail::Expr> root,
                       std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

ScalarFunc ScalarFunc::parse(std::string_view text, ParseOptions options) {
  detail::Parser parser(text);
  detail::ExprPtr root = parser.parse();
  if (options.fold_constants) root = detail::fold(root);
  return ScalarFunc(std::move(root), std::string(text));
}

ScalarFunc ScalarFunc::constant(double c) {
  return ScalarFunc(detail::make_number(c), detail::print_number(c));
}

double ScalarFunc::operator()(double t) const {
  return detail::eval_value(*root_, t);
}

Jet2 ScalarFunc::jet(double t) const { return detail::eval_jet(*root_, t); }

std::string ScalarFunc::printed() const {
  std::string out;
  detail::print(*root_, out);
  return out;
}

}  // namespace fracvx
