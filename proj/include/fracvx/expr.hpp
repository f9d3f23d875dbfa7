#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "fracvx/jet.hpp"

namespace fracvx {

namespace detail {
struct Expr;
}

struct ParseOptions {
  /// Fold constant subtrees at parse time. Folding performs exactly the same
  /// double-precision operations as evaluation, so results are unchanged.
  bool fold_constants = true;
};

/// An immutable scalar function of one variable `t`, parsed from a small
/// expression language:
///
///   expr    = term { ("+" | "-") term }
///   term    = factor { ("*" | "/") factor }
///   factor  = "-" factor | power
///   power   = primary [ "^" factor ]            (right associative)
///   primary = number | "t" | name "(" args ")" | "(" expr ")"
///   name    = "sin" | "cos" | "exp" | "ln" | "sqrt" | "pow"
///
/// `pow(a, b)` takes two arguments; the other functions take one.
/// `a ^ b` with a non-integer exponent requires a positive base.
/// Evaluation is deterministic: the same input produces bit-identical output.
class ScalarFunc {
 public:
  /// Parses `text`. Throws ParseError (with byte position) on bad syntax or
  /// unknown identifiers.
  static ScalarFunc parse(std::string_view text, ParseOptions options = {});

  /// Convenience constructor for a constant function.
  static ScalarFunc constant(double c);

  /// Value at t. Throws DomainError when the expression leaves its domain.
  double operator()(double t) const;

  /// Value with first and second derivative at t.
  Jet2 jet(double t) const;

  /// The original source text.
  const std::string& source() const { return source_; }

  /// A canonical printed form of the parsed tree; parsing it again yields an
  /// equivalent function.
  std::string printed() const;

 private:
  ScalarFunc(std::shared_ptr<const detail::Expr> root, std::string source);

  std::shared_ptr<const detail::Expr> root_;
  std::string source_;
};

}  // namespace fracvx
