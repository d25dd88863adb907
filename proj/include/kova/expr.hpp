#ifndef KOVA_EXPR_HPP
#define KOVA_EXPR_HPP

#include "kova/multipoly.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace kova {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  int line, column;
};

/// Expression tree produced by the parser. Powers are non-negative integer
/// literals; variable names are resolved against a table only when the tree
/// is folded into a polynomial.
struct ExprAst {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Pow };
  Kind kind;
  Rational value;                    // Number
  std::string name;                  // Var
  int exponent = 0;                  // Pow
  std::vector<std::unique_ptr<ExprAst>> children;
  int line = 0, column = 0;
};

/// Grammar (explicit '*' and '^'; names are letters followed by digits):
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := ('-')? atom ('^' uint)?
///   atom   := rational | name | '(' expr ')'
std::unique_ptr<ExprAst> parse_expr_ast(const std::string& src);

/// Fold a tree into an exact polynomial; every variable must be in the table.
MultiPoly fold_expr(const ExprAst& ast, const VarTablePtr& vars);

MultiPoly parse_expr(const std::string& src, const VarTablePtr& vars);

/// Canonical textual form; parse_expr(print_expr(p)) == p.
std::string print_expr(const MultiPoly& p);

}  // namespace kova

#endif
