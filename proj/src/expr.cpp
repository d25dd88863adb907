#include "kova/expr.hpp"

#include <cctype>
#include <sstream>

namespace kova {

namespace {

struct Token {
  enum class Kind { Number, Name, Plus, Minus, Star, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  int line, column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
      ++pos_;
    }
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= src_.size()) { tok_.kind = Token::Kind::End; tok_.text = ""; return; }
    char c = src_[pos_];
    auto single = [&](Token::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      ++pos_; ++col_;
    };
    switch (c) {
      case '+': single(Token::Kind::Plus); return;
      case '-': single(Token::Kind::Minus); return;
      case '*': single(Token::Kind::Star); return;
      case '^': single(Token::Kind::Caret); return;
      case '(': single(Token::Kind::LParen); return;
      case ')': single(Token::Kind::RParen); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_; ++col_;
      }
      // A '/' directly between digit runs is part of a rational literal.
      if (pos_ < src_.size() && src_[pos_] == '/' && pos_ + 1 < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_; ++col_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          ++pos_; ++col_;
        }
      }
      tok_.kind = Token::Kind::Number;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_; ++col_;
      }
      tok_.kind = Token::Kind::Name;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  std::unique_ptr<ExprAst> parse() {
    auto e = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End)
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.column);
    return e;
  }

 private:
  static std::unique_ptr<ExprAst> node(ExprAst::Kind k, const Token& at) {
    auto n = std::make_unique<ExprAst>();
    n->kind = k;
    n->line = at.line;
    n->column = at.column;
    return n;
  }

  std::unique_ptr<ExprAst> expr() {
    auto lhs = term();
    while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
      Token op = lex_.take();
      auto n = node(op.kind == Token::Kind::Plus ? ExprAst::Kind::Add : ExprAst::Kind::Sub, op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(term());
      lhs = std::move(n);
    }
    return lhs;
  }

  std::unique_ptr<ExprAst> term() {
    auto lhs = factor();
    while (lex_.peek().kind == Token::Kind::Star) {
      Token op = lex_.take();
      auto n = node(ExprAst::Kind::Mul, op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(factor());
      lhs = std::move(n);
    }
    return lhs;
  }

  std::unique_ptr<ExprAst> factor() {
    bool neg = false;
    Token first = lex_.peek();
    if (first.kind == Token::Kind::Minus) {
      lex_.take();
      neg = true;
    }
    auto base = atom();
    if (lex_.peek().kind == Token::Kind::Caret) {
      Token caret = lex_.take();
      Token e = lex_.peek();
      if (e.kind != Token::Kind::Number || e.text.find('/') != std::string::npos)
        throw ParseError("exponent must be a non-negative integer", caret.line, caret.column);
      lex_.take();
      auto n = node(ExprAst::Kind::Pow, caret);
      n->exponent = std::stoi(e.text);
      n->children.push_back(std::move(base));
      base = std::move(n);
    }
    if (neg) {
      auto n = node(ExprAst::Kind::Neg, first);
      n->children.push_back(std::move(base));
      base = std::move(n);
    }
    return base;
  }

  std::unique_ptr<ExprAst> atom() {
    Token t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        lex_.take();
        auto n = node(ExprAst::Kind::Number, t);
        n->value = Rational::from_string(t.text);
        return n;
      }
      case Token::Kind::Name: {
        lex_.take();
        auto n = node(ExprAst::Kind::Var, t);
        n->name = t.text;
        return n;
      }
      case Token::Kind::LParen: {
        lex_.take();
        auto e = expr();
        Token close = lex_.peek();
        if (close.kind != Token::Kind::RParen)
          throw ParseError("expected ')'", close.line, close.column);
        lex_.take();
        return e;
      }
      default:
        throw ParseError("expected a number, name or '('", t.line, t.column);
    }
  }

  Lexer lex_;
};

}  // namespace

std::unique_ptr<ExprAst> parse_expr_ast(const std::string& src) { return Parser(src).parse(); }

MultiPoly fold_expr(const ExprAst& ast, const VarTablePtr& vars) {
  switch (ast.kind) {
    case ExprAst::Kind::Number:
      return MultiPoly::constant(vars, ast.value);
    case ExprAst::Kind::Var: {
      auto idx = vars->index_of(ast.name);
      if (!idx) throw ParseError("unknown variable '" + ast.name + "'", ast.line, ast.column);
      return MultiPoly::variable(vars, *idx);
    }
    case ExprAst::Kind::Neg:
      return -fold_expr(*ast.children[0], vars);
    case ExprAst::Kind::Add:
      return fold_expr(*ast.children[0], vars) + fold_expr(*ast.children[1], vars);
    case ExprAst::Kind::Sub:
      return fold_expr(*ast.children[0], vars) - fold_expr(*ast.children[1], vars);
    case ExprAst::Kind::Mul:
      return fold_expr(*ast.children[0], vars) * fold_expr(*ast.children[1], vars);
    case ExprAst::Kind::Pow:
      return fold_expr(*ast.children[0], vars).pow(ast.exponent);
  }
  throw std::logic_error("fold_expr: unreachable");
}

MultiPoly parse_expr(const std::string& src, const VarTablePtr& vars) {
  return fold_expr(*parse_expr_ast(src), vars);
}

std::string print_expr(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational a = c.abs();
    if (first) {
      if (c.is_negative()) os << "-";
      first = false;
    } else {
      os << (c.is_negative() ? " - " : " + ");
    }
    std::vector<std::string> parts;
    if (!a.is_one()) parts.push_back(a.to_string());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string v = p.vars()->name(i);
      if (e[i] > 1) v += "^" + std::to_string(e[i]);
      parts.push_back(std::move(v));
    }
    if (parts.empty()) parts.push_back(a.to_string());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) os << "*";
      os << parts[i];
    }
  }
  return os.str();
}

}  // namespace kova
