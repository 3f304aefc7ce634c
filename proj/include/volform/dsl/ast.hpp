#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "volform/error.hpp"

namespace volform::dsl {

struct Pos {
  int line = 1;
  int column = 1;
  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(column); }
};

/// Error tied to a source position; what() is "line:col: message".
class SourceError : public Error {
 public:
  SourceError(Pos pos, const std::string& message)
      : Error(pos.to_string() + ": " + message), pos_(pos), message_(message) {}
  Pos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Pos pos_;
  std::string message_;
};

class ParseError : public SourceError {
 public:
  using SourceError::SourceError;
};

class SemanticError : public SourceError {
 public:
  using SourceError::SourceError;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Number,  // text holds the digits
    Ident,   // text holds the name
    Deriv,   // d/dX; text holds X
    Neg,     // children[0]
    Binary,  // op in + - * / ^
    Call,    // text holds a builtin name
    List,    // [a, b, ...]
    Tuple,   // (a, b, ...) with at least two items
  };
  Kind kind;
  Pos pos;
  std::string text;
  char op = 0;
  std::vector<ExprPtr> children;

  static ExprPtr number(Pos p, std::string digits);
  static ExprPtr ident(Pos p, std::string name);
  static ExprPtr deriv(Pos p, std::string var);
  static ExprPtr neg(Pos p, ExprPtr e);
  static ExprPtr binary(Pos p, char op, ExprPtr l, ExprPtr r);
  static ExprPtr call(Pos p, std::string name, std::vector<ExprPtr> args);
  static ExprPtr list(Pos p, std::vector<ExprPtr> items);
  static ExprPtr tuple(Pos p, std::vector<ExprPtr> items);
};

/// Structural equality, ignoring positions.
bool same_expr(const Expr& a, const Expr& b);

struct VarDecl {
  Pos pos;
  std::string name;
  bool invertible = false;
};

struct RelDecl {
  Pos pos;
  ExprPtr poly;
  std::optional<std::string> solve;
};

struct ChartStmt {
  Pos pos;
  std::vector<VarDecl> vars;
  std::vector<VarDecl> inverts;
  std::vector<RelDecl> rels;
};

/// let, field, form and volume definitions.
struct DefStmt {
  enum class Kind { Let, Field, Form, Volume };
  Pos pos;
  Kind kind;
  std::string name;
  ExprPtr value;
};

struct Binding {
  Pos pos;
  std::string name;
  ExprPtr value;
};

struct ActionStmt {
  Pos pos;
  std::string name;
  std::vector<Binding> images;
  std::string order;
};

struct PointStmt {
  Pos pos;
  std::string name;
  std::vector<Binding> values;
};

struct GroupStmt {
  Pos pos;
  std::string name;
  std::string size;
  std::vector<ExprPtr> basis;
  std::vector<Binding> elements;
};

struct CheckStmt {
  Pos pos;
  std::string kind;
  std::vector<ExprPtr> args;
  std::optional<std::string> expect;
};

using Statement = std::variant<ChartStmt, DefStmt, ActionStmt, PointStmt, GroupStmt, CheckStmt>;

struct Document {
  std::vector<Statement> statements;
};

/// Structural equality, ignoring positions.
bool same_document(const Document& a, const Document& b);

}  // namespace volform::dsl
