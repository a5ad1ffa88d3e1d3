// Copyright 2026 The Gleason Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// A small text language for declaring test measures, e.g.
//
//   measure born dim 3 rho = diag(0.5, 0.3, 0.2)
//   measure affine dim 3 eta = zero K(1) = 0.25
//
// The grammar is in docs/measure-dsl.md. Parsing produces an AST that can be
// pretty-printed back to text; printing then reparsing yields an equal AST.

#ifndef GLEASON_MEASURE_DSL_HPP
#define GLEASON_MEASURE_DSL_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gleason/errors.hpp"
#include "gleason/hilbert.hpp"
#include "gleason/measures.hpp"

namespace gleason::dsl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Imaginary, Identifier, Call, MatrixLiteral, Negate, Binary };

  Kind kind = Kind::Number;
  double value = 0.0;                       // Number, Imaginary
  std::string name;                         // Identifier, Call
  char op = 0;                              // Binary: + - * /
  std::vector<ExprPtr> args;                // Call arguments; Negate/Binary operands
  std::vector<std::vector<ExprPtr>> rows;   // MatrixLiteral
  int line = 0;
  int column = 0;
};

/// Structural equality, ignoring source positions.
inline bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.op != b.op ||
      a.args.size() != b.args.size() || a.rows.size() != b.rows.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!equal(*a.args[k], *b.args[k])) return false;
  }
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      if (!equal(*a.rows[r][c], *b.rows[r][c])) return false;
    }
  }
  return true;
}

enum class MeasureKind { Born, Affine, Quadratic, Polynomial };
enum class Target { Rho, Eta, K, Coefficient };

struct Assignment {
  Target target = Target::Rho;
  int index = 0;  // K(index), c(index)
  ExprPtr value;
  int line = 0;
  int column = 0;
};

struct SpecAst {
  bool frame = false;  // "frame" header: evaluate as a frame function
  MeasureKind kind = MeasureKind::Born;
  int dim = 0;
  std::vector<Assignment> assignments;
};

inline bool operator==(const SpecAst& a, const SpecAst& b) {
  if (a.frame != b.frame || a.kind != b.kind || a.dim != b.dim ||
      a.assignments.size() != b.assignments.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.assignments.size(); ++k) {
    const auto& x = a.assignments[k];
    const auto& y = b.assignments[k];
    if (x.target != y.target || x.index != y.index || !equal(*x.value, *y.value)) {
      return false;
    }
  }
  return true;
}

inline const char* kind_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::Born: return "born";
    case MeasureKind::Affine: return "affine";
    case MeasureKind::Quadratic: return "quadratic";
    case MeasureKind::Polynomial: return "polynomial";
  }
  return "?";
}

namespace detail {

struct Token {
  enum class Type { Identifier, Number, Imaginary, Punct, End };
  Type type = Type::End;
  std::string text;
  double value = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        t.type = Token::Type::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident(src_[pos_])) advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        if (t.text == "i") {
          t.type = Token::Type::Imaginary;
          t.value = 1.0;
        } else {
          t.type = Token::Type::Identifier;
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(t);
      } else if (std::string_view("=()[],+-*/").find(c) != std::string_view::npos) {
        t.type = Token::Type::Punct;
        t.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
      }
      out.push_back(t);
    }
  }

 private:
  static bool is_ident(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        while (pos_ < look) advance();
        digits();
      }
    }
    const std::string_view lexeme = src_.substr(start, pos_ - start);
    double v = 0.0;
    auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      throw ParseError("invalid numeric literal '" + std::string(lexeme) + "'", t.line, t.column);
    }
    t.text = std::string(lexeme);
    t.value = v;
    t.type = Token::Type::Number;
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        (pos_ + 1 >= src_.size() || !is_ident(src_[pos_ + 1]))) {
      advance();
      t.type = Token::Type::Imaginary;
      t.text += "i";
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SpecAst spec() {
    SpecAst ast;
    const Token& head = expect_identifier("'measure' or 'frame'");
    if (head.text == "frame") {
      ast.frame = true;
    } else if (head.text != "measure") {
      fail("expected 'measure' or 'frame', found '" + head.text + "'", head);
    }
    const Token& kind = expect_identifier("measure kind");
    if (kind.text == "born") ast.kind = MeasureKind::Born;
    else if (kind.text == "affine") ast.kind = MeasureKind::Affine;
    else if (kind.text == "quadratic") ast.kind = MeasureKind::Quadratic;
    else if (kind.text == "polynomial") ast.kind = MeasureKind::Polynomial;
    else fail("unknown measure kind '" + kind.text + "'", kind);
    const Token& dim_kw = expect_identifier("'dim'");
    if (dim_kw.text != "dim") fail("expected 'dim', found '" + dim_kw.text + "'", dim_kw);
    ast.dim = integer("dimension");
    if (ast.dim < 1 || ast.dim > kMaxVerificationDim) {
      fail("dimension must be in [1, " + std::to_string(kMaxVerificationDim) + "]", previous());
    }
    while (peek().type != Token::Type::End) ast.assignments.push_back(assignment());
    return ast;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.type != Token::Type::End) ++pos_;
    return t;
  }

  [[noreturn]] static void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.column);
  }

  static std::string describe(const Token& t) {
    return t.type == Token::Type::End ? std::string("end of input") : "'" + t.text + "'";
  }

  const Token& expect_identifier(const char* what) {
    const Token& t = peek();
    if (t.type != Token::Type::Identifier) {
      fail(std::string("expected ") + what + ", found " + describe(t), t);
    }
    return next();
  }

  void expect_punct(char c) {
    const Token& t = peek();
    if (t.type != Token::Type::Punct || t.text[0] != c) {
      fail(std::string("expected '") + c + "', found " + describe(t), t);
    }
    next();
  }

  bool accept_punct(char c) {
    const Token& t = peek();
    if (t.type == Token::Type::Punct && t.text[0] == c) {
      next();
      return true;
    }
    return false;
  }

  int integer(const char* what) {
    const Token& t = peek();
    if (t.type != Token::Type::Number || t.value != std::floor(t.value) || t.value > 1e6) {
      fail(std::string("expected integer ") + what + ", found " + describe(t), t);
    }
    next();
    return static_cast<int>(t.value);
  }

  Assignment assignment() {
    const Token& name = expect_identifier("assignment target");
    Assignment a;
    a.line = name.line;
    a.column = name.column;
    if (name.text == "rho") {
      a.target = Target::Rho;
    } else if (name.text == "eta") {
      a.target = Target::Eta;
    } else if (name.text == "K" || name.text == "c") {
      a.target = name.text == "K" ? Target::K : Target::Coefficient;
      expect_punct('(');
      a.index = integer("index");
      expect_punct(')');
    } else {
      fail("unknown identifier '" + name.text + "'", name);
    }
    expect_punct('=');
    a.value = expression();
    return a;
  }

  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr expression() {
    ExprPtr lhs = term();
    for (;;) {
      const Token& t = peek();
      if (t.type == Token::Type::Punct && (t.text == "+" || t.text == "-")) {
        next();
        Expr e;
        e.kind = Expr::Kind::Binary;
        e.op = t.text[0];
        e.line = t.line;
        e.column = t.column;
        e.args = {lhs, term()};
        lhs = make(std::move(e));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      const Token& t = peek();
      if (t.type == Token::Type::Punct && (t.text == "*" || t.text == "/")) {
        next();
        Expr e;
        e.kind = Expr::Kind::Binary;
        e.op = t.text[0];
        e.line = t.line;
        e.column = t.column;
        e.args = {lhs, unary()};
        lhs = make(std::move(e));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (t.type == Token::Type::Punct && t.text == "-") {
      next();
      Expr e;
      e.kind = Expr::Kind::Negate;
      e.line = t.line;
      e.column = t.column;
      e.args = {unary()};
      return make(std::move(e));
    }
    if (t.type == Token::Type::Punct && t.text == "+") {
      next();
      return unary();
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    Expr e;
    e.line = t.line;
    e.column = t.column;
    switch (t.type) {
      case Token::Type::Number:
        next();
        e.kind = Expr::Kind::Number;
        e.value = t.value;
        return make(std::move(e));
      case Token::Type::Imaginary:
        next();
        e.kind = Expr::Kind::Imaginary;
        e.value = t.value;
        return make(std::move(e));
      case Token::Type::Identifier:
        next();
        if (accept_punct('(')) {
          e.kind = Expr::Kind::Call;
          e.name = t.text;
          e.args.push_back(expression());
          while (accept_punct(',')) e.args.push_back(expression());
          expect_punct(')');
        } else {
          e.kind = Expr::Kind::Identifier;
          e.name = t.text;
        }
        return make(std::move(e));
      case Token::Type::Punct:
        if (t.text == "(") {
          next();
          ExprPtr inner = expression();
          expect_punct(')');
          return inner;
        }
        if (t.text == "[") {
          next();
          e.kind = Expr::Kind::MatrixLiteral;
          do {
            expect_punct('[');
            std::vector<ExprPtr> row{expression()};
            while (accept_punct(',')) row.push_back(expression());
            expect_punct(']');
            e.rows.push_back(std::move(row));
          } while (accept_punct(','));
          expect_punct(']');
          return make(std::move(e));
        }
        break;
      case Token::Type::End:
        break;
    }
    fail("expected expression, found " + describe(t), t);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Number:
      out += format_number(e.value);
      return;
    case Expr::Kind::Imaginary:
      out += format_number(e.value);
      out += 'i';
      return;
    case Expr::Kind::Identifier:
      out += e.name;
      return;
    case Expr::Kind::Call:
      out += e.name;
      out += '(';
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (k) out += ", ";
        print_expr(*e.args[k], out);
      }
      out += ')';
      return;
    case Expr::Kind::MatrixLiteral:
      out += '[';
      for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (r) out += ", ";
        out += '[';
        for (std::size_t c = 0; c < e.rows[r].size(); ++c) {
          if (c) out += ", ";
          print_expr(*e.rows[r][c], out);
        }
        out += ']';
      }
      out += ']';
      return;
    case Expr::Kind::Negate:
      out += '-';
      print_expr(*e.args[0], out);
      return;
    case Expr::Kind::Binary:
      out += '(';
      print_expr(*e.args[0], out);
      out += ' ';
      out += e.op;
      out += ' ';
      print_expr(*e.args[1], out);
      out += ')';
      return;
  }
}

using Value = std::variant<Complex, Matrix>;

class Evaluator {
 public:
  explicit Evaluator(int dim) : dim_(dim) {}

  Value eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Number: return Complex(e.value, 0.0);
      case Expr::Kind::Imaginary: return Complex(0.0, e.value);
      case Expr::Kind::Identifier:
        if (e.name == "zero") return Matrix(Matrix::Zero(dim_, dim_));
        if (e.name == "identity") return identity_matrix(dim_);
        throw ParseError("unknown identifier '" + e.name + "'", e.line, e.column);
      case Expr::Kind::Call: return call(e);
      case Expr::Kind::MatrixLiteral: return literal(e);
      case Expr::Kind::Negate: {
        Value v = eval(*e.args[0]);
        if (auto* s = std::get_if<Complex>(&v)) return -*s;
        return Matrix(-std::get<Matrix>(v));
      }
      case Expr::Kind::Binary: return binary(e);
    }
    throw ParseError("malformed expression", e.line, e.column);
  }

  Complex scalar(const Expr& e) const {
    Value v = eval(e);
    if (auto* s = std::get_if<Complex>(&v)) return *s;
    throw ParseError("expected a scalar, found a matrix", e.line, e.column);
  }

  double real_scalar(const Expr& e) const {
    const Complex s = scalar(e);
    if (s.imag() != 0.0) throw ParseError("expected a real scalar", e.line, e.column);
    return s.real();
  }

  Matrix matrix(const Expr& e) const {
    Value v = eval(e);
    if (auto* m = std::get_if<Matrix>(&v)) return *m;
    throw ParseError("expected a matrix, found a scalar", e.line, e.column);
  }

 private:
  Value call(const Expr& e) const {
    if (e.name == "diag") {
      if (static_cast<int>(e.args.size()) != dim_) {
        throw ParseError("dimension mismatch: diag has " + std::to_string(e.args.size()) +
                             " entries, dim is " + std::to_string(dim_),
                         e.line, e.column);
      }
      Matrix m = Matrix::Zero(dim_, dim_);
      for (int k = 0; k < dim_; ++k) m(k, k) = scalar(*e.args[k]);
      return m;
    }
    if (e.name == "pure") {
      if (static_cast<int>(e.args.size()) != dim_) {
        throw ParseError("dimension mismatch: pure has " + std::to_string(e.args.size()) +
                             " amplitudes, dim is " + std::to_string(dim_),
                         e.line, e.column);
      }
      Vector v(dim_);
      for (int k = 0; k < dim_; ++k) v(k) = scalar(*e.args[k]);
      if (v.norm() == 0.0) throw ParseError("pure state of zero vector", e.line, e.column);
      v.normalize();
      return Matrix(v * v.adjoint());
    }
    if (e.name == "sqrt") {
      if (e.args.size() != 1) throw ParseError("sqrt takes one argument", e.line, e.column);
      return std::sqrt(scalar(*e.args[0]));
    }
    throw ParseError("unknown identifier '" + e.name + "'", e.line, e.column);
  }

  Value literal(const Expr& e) const {
    if (static_cast<int>(e.rows.size()) != dim_) {
      throw ParseError("dimension mismatch: matrix literal has " + std::to_string(e.rows.size()) +
                           " rows, dim is " + std::to_string(dim_),
                       e.line, e.column);
    }
    Matrix m(dim_, dim_);
    for (int r = 0; r < dim_; ++r) {
      if (static_cast<int>(e.rows[r].size()) != dim_) {
        throw ParseError("dimension mismatch: row " + std::to_string(r + 1) + " has " +
                             std::to_string(e.rows[r].size()) + " entries, dim is " +
                             std::to_string(dim_),
                         e.line, e.column);
      }
      for (int c = 0; c < dim_; ++c) m(r, c) = scalar(*e.rows[r][c]);
    }
    return m;
  }

  Value binary(const Expr& e) const {
    Value a = eval(*e.args[0]);
    Value b = eval(*e.args[1]);
    const Complex* sa = std::get_if<Complex>(&a);
    const Complex* sb = std::get_if<Complex>(&b);
    switch (e.op) {
      case '+':
      case '-': {
        if (sa && sb) return e.op == '+' ? *sa + *sb : *sa - *sb;
        if (!sa && !sb) {
          const Matrix& ma = std::get<Matrix>(a);
          const Matrix& mb = std::get<Matrix>(b);
          return Matrix(e.op == '+' ? Matrix(ma + mb) : Matrix(ma - mb));
        }
        throw ParseError("cannot add a scalar and a matrix", e.line, e.column);
      }
      case '*':
        if (sa && sb) return *sa * *sb;
        if (sa) return Matrix(*sa * std::get<Matrix>(b));
        if (sb) return Matrix(std::get<Matrix>(a) * *sb);
        return Matrix(std::get<Matrix>(a) * std::get<Matrix>(b));
      case '/':
        if (!sb) throw ParseError("division by a matrix", e.line, e.column);
        if (*sb == Complex(0.0, 0.0)) throw ParseError("division by zero", e.line, e.column);
        if (sa) return *sa / *sb;
        return Matrix(std::get<Matrix>(a) / *sb);
    }
    throw ParseError("unknown operator", e.line, e.column);
  }

  int dim_;
};

}  // namespace detail

/// Parses measure-spec text into an AST. Throws ParseError with the 1-based
/// line and column of the offending token.
inline SpecAst parse(std::string_view text) {
  detail::Parser parser(detail::Lexer(text).run());
  return parser.spec();
}

inline std::string print(const Expr& e) {
  std::string out;
  detail::print_expr(e, out);
  return out;
}

/// Canonical text form: header line, then one assignment per line.
inline std::string print(const SpecAst& ast) {
  std::string out = ast.frame ? "frame " : "measure ";
  out += kind_name(ast.kind);
  out += " dim " + std::to_string(ast.dim) + "\n";
  for (const auto& a : ast.assignments) {
    switch (a.target) {
      case Target::Rho: out += "rho"; break;
      case Target::Eta: out += "eta"; break;
      case Target::K: out += "K(" + std::to_string(a.index) + ")"; break;
      case Target::Coefficient: out += "c(" + std::to_string(a.index) + ")"; break;
    }
    out += " = ";
    detail::print_expr(*a.value, out);
    out += "\n";
  }
  return out;
}

/// Builds the evaluable measure an AST describes. Semantic errors (missing
/// or misplaced assignments, non-Hermitian operators, invalid states) are
/// reported as ParseError at the assignment's position.
inline Measure build_measure(const SpecAst& ast) {
  const detail::Evaluator ev(ast.dim);
  std::optional<Matrix> rho;
  std::optional<Matrix> eta;
  std::map<int, double> constants;
  std::map<int, double> coefficients;
  const Assignment* rho_at = nullptr;
  const Assignment* eta_at = nullptr;

  auto reject = [&](const Assignment& a, const char* name) {
    throw ParseError(std::string("'") + name + "' is not valid for a " + kind_name(ast.kind) +
                         " measure",
                     a.line, a.column);
  };
  auto hermitian = [&](const Assignment& a, Matrix m) {
    if (!is_hermitian(m)) throw ParseError("operator is not Hermitian", a.line, a.column);
    return hermitian_part(m);
  };

  for (const auto& a : ast.assignments) {
    switch (a.target) {
      case Target::Rho:
        if (ast.kind == MeasureKind::Affine) reject(a, "rho");
        if (rho) throw ParseError("duplicate assignment to 'rho'", a.line, a.column);
        rho = hermitian(a, ev.matrix(*a.value));
        rho_at = &a;
        break;
      case Target::Eta:
        if (ast.kind != MeasureKind::Affine) reject(a, "eta");
        if (eta) throw ParseError("duplicate assignment to 'eta'", a.line, a.column);
        eta = hermitian(a, ev.matrix(*a.value));
        eta_at = &a;
        break;
      case Target::K:
        if (ast.kind != MeasureKind::Affine) reject(a, "K");
        if (a.index < 1 || a.index > ast.dim) {
          throw ParseError("rank class out of range", a.line, a.column);
        }
        if (!constants.emplace(a.index, ev.real_scalar(*a.value)).second) {
          throw ParseError("duplicate rank class", a.line, a.column);
        }
        break;
      case Target::Coefficient:
        if (ast.kind != MeasureKind::Polynomial) reject(a, "c");
        if (!coefficients.emplace(a.index, ev.real_scalar(*a.value)).second) {
          throw ParseError("duplicate coefficient", a.line, a.column);
        }
        break;
    }
  }

  switch (ast.kind) {
    case MeasureKind::Born: {
      if (!rho) throw ParseError("born measure requires 'rho'", 1, 1);
      try {
        return make_born_measure(DensityOperator::make(*rho, 1e-9, 1e-9));
      } catch (const NotAStateError& err) {
        throw ParseError(std::string("rho is not a density operator: ") + err.what(),
                         rho_at->line, rho_at->column);
      }
    }
    case MeasureKind::Affine: {
      if (constants.empty()) throw ParseError("affine measure requires at least one K(r)", 1, 1);
      (void)eta_at;
      const Matrix e = eta ? *eta : Matrix(Matrix::Zero(ast.dim, ast.dim));
      return AffineMeasure::normalized(e, constants).as_measure();
    }
    case MeasureKind::Quadratic:
      if (!rho) throw ParseError("quadratic measure requires 'rho'", 1, 1);
      return make_quadratic_measure(*rho);
    case MeasureKind::Polynomial: {
      if (!rho) throw ParseError("polynomial measure requires 'rho'", 1, 1);
      const int degree = coefficients.empty() ? 0 : coefficients.rbegin()->first;
      std::vector<double> c(degree + 1, 0.0);
      for (const auto& [k, v] : coefficients) c[k] = v;
      return make_polynomial_measure(*rho, std::move(c));
    }
  }
  throw ParseError("unknown measure kind", 1, 1);
}

using ParsedSpec = std::variant<Measure, FrameFunction>;

/// Parses and builds: a Measure for "measure" headers, the radially extended
/// frame function for "frame" headers.
inline ParsedSpec parse_measure_spec(std::string_view text) {
  const SpecAst ast = parse(text);
  Measure mu = build_measure(ast);
  if (ast.frame) return frame_function(mu);
  return mu;
}

}  // namespace gleason::dsl

#endif  // GLEASON_MEASURE_DSL_HPP
