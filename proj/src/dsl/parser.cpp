#include "volform/dsl/parser.hpp"

#include <array>
#include <algorithm>

#include "volform/dsl/lexer.hpp"

namespace volform::dsl {

namespace {

constexpr std::array keywords{"chart", "vars",   "invert", "rel",   "solve", "let",   "field", "form",  "volume",
                              "action", "order", "point",  "group", "size",  "basis", "element", "check", "expect"};
constexpr std::array builtins{"d", "iota", "lie", "div"};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Document document() {
    Document doc;
    if (at(Tok::End)) throw ParseError(Pos{}, "empty document");
    while (!at(Tok::End)) doc.statements.push_back(statement());
    return doc;
  }

  ExprPtr whole_expression() {
    auto e = expression();
    expect(Tok::End, "end of expression");
    return e;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && cur().text == w; }
  Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(const std::string& wanted) const {
    throw ParseError(cur().pos, "expected " + wanted + " but found " + describe(cur()));
  }

  Token expect(Tok k, const std::string& wanted) {
    if (!at(k)) fail(wanted);
    return take();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("'" + std::string(w) + "'");
    take();
  }

  Token name(const std::string& what) {
    if (!at(Tok::Ident)) fail(what);
    if (is_keyword(cur().text) || is_builtin(cur().text)) {
      throw ParseError(cur().pos, "'" + cur().text + "' is reserved and cannot name " + what);
    }
    return take();
  }

  Statement statement() {
    if (!at(Tok::Ident)) fail("a statement");
    const std::string w = cur().text;
    if (w == "chart") return chart();
    if (w == "let" || w == "field" || w == "form" || w == "volume") return definition();
    if (w == "action") return action();
    if (w == "point") return point();
    if (w == "group") return group();
    if (w == "check") return check();
    fail("a statement");
  }

  ChartStmt chart() {
    ChartStmt c{take().pos, {}, {}, {}};
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      if (at_word("vars")) {
        take();
        do {
          auto t = name("a variable");
          bool inv = false;
          if (at(Tok::Star)) {
            take();
            inv = true;
          }
          c.vars.push_back({t.pos, t.text, inv});
        } while (at(Tok::Comma) && (take(), true));
      } else if (at_word("invert")) {
        take();
        do {
          auto t = name("a variable");
          c.inverts.push_back({t.pos, t.text, true});
        } while (at(Tok::Comma) && (take(), true));
      } else if (at_word("rel")) {
        RelDecl r{take().pos, nullptr, std::nullopt};
        r.poly = expression();
        if (at_word("solve")) {
          take();
          r.solve = name("a variable").text;
        }
        c.rels.push_back(std::move(r));
      } else {
        fail("'vars', 'invert', 'rel' or '}'");
      }
      expect(Tok::Semi, "';'");
    }
    take();
    return c;
  }

  DefStmt definition() {
    const Token kw = take();
    DefStmt d{kw.pos, DefStmt::Kind::Let, "", nullptr};
    if (kw.text == "field") d.kind = DefStmt::Kind::Field;
    if (kw.text == "form") d.kind = DefStmt::Kind::Form;
    if (kw.text == "volume") d.kind = DefStmt::Kind::Volume;
    d.name = name("a definition").text;
    expect(Tok::Assign, "'='");
    d.value = expression();
    expect(Tok::Semi, "';'");
    return d;
  }

  std::vector<Binding> bindings(Tok separator, const std::string& sep_text) {
    std::vector<Binding> out;
    do {
      auto t = name("a variable");
      expect(separator, sep_text);
      out.push_back({t.pos, t.text, expression()});
    } while (at(Tok::Comma) && (take(), true));
    return out;
  }

  ActionStmt action() {
    ActionStmt a{take().pos, "", {}, ""};
    a.name = name("an action").text;
    expect(Tok::Colon, "':'");
    a.images = bindings(Tok::Arrow, "'->'");
    expect_word("order");
    a.order = expect(Tok::Number, "an order").text;
    expect(Tok::Semi, "';'");
    return a;
  }

  PointStmt point() {
    PointStmt p{take().pos, "", {}};
    p.name = name("a point").text;
    expect(Tok::Colon, "':'");
    p.values = bindings(Tok::Assign, "'='");
    expect(Tok::Semi, "';'");
    return p;
  }

  GroupStmt group() {
    GroupStmt g{take().pos, "", "", {}, {}};
    g.name = name("a group").text;
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      if (at_word("size")) {
        take();
        g.size = expect(Tok::Number, "a matrix size").text;
      } else if (at_word("basis")) {
        take();
        do {
          g.basis.push_back(expression());
        } while (at(Tok::Comma) && (take(), true));
      } else if (at_word("element")) {
        take();
        auto t = name("a group element");
        expect(Tok::Assign, "'='");
        g.elements.push_back({t.pos, t.text, expression()});
      } else {
        fail("'size', 'basis', 'element' or '}'");
      }
      expect(Tok::Semi, "';'");
    }
    take();
    return g;
  }

  CheckStmt check() {
    CheckStmt c{take().pos, "", {}, std::nullopt};
    if (!at(Tok::Ident)) fail("a check kind");
    c.kind = take().text;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) c.args = expression_list(Tok::RParen);
    expect(Tok::RParen, "')'");
    if (at_word("expect")) {
      take();
      if (at(Tok::Minus)) {
        take();
        c.expect = "-" + expect(Tok::Number, "an expected outcome").text;
      } else if (at(Tok::Ident) || at(Tok::Number)) {
        c.expect = take().text;
      } else {
        fail("an expected outcome");
      }
    }
    expect(Tok::Semi, "';'");
    return c;
  }

  std::vector<ExprPtr> expression_list(Tok close) {
    std::vector<ExprPtr> out{expression()};
    while (at(Tok::Comma)) {
      take();
      out.push_back(expression());
    }
    if (!at(close)) fail(close == Tok::RParen ? "',' or ')'" : "',' or ']'");
    return out;
  }

  ExprPtr expression() {
    auto e = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Token op = take();
      e = Expr::binary(op.pos, op.text[0], e, term());
    }
    return e;
  }

  bool starts_primary() const {
    switch (cur().kind) {
      case Tok::Number:
      case Tok::Deriv:
      case Tok::LParen:
      case Tok::LBracket: return true;
      case Tok::Ident: return !is_keyword(cur().text);
      default: return false;
    }
  }

  ExprPtr term() {
    auto e = unary();
    for (;;) {
      if (at(Tok::Star) || at(Tok::Slash)) {
        const Token op = take();
        e = Expr::binary(op.pos, op.text[0], e, unary());
      } else if (starts_primary()) {
        const Pos p = cur().pos;
        e = Expr::binary(p, '*', e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      const Pos p = take().pos;
      return Expr::neg(p, unary());
    }
    return power();
  }

  ExprPtr power() {
    auto base = primary();
    if (at(Tok::Caret)) {
      const Pos p = take().pos;
      return Expr::binary(p, '^', base, unary());
    }
    return base;
  }

  ExprPtr primary() {
    const Token t = cur();
    switch (t.kind) {
      case Tok::Number: take(); return Expr::number(t.pos, t.text);
      case Tok::Deriv: take(); return Expr::deriv(t.pos, t.text);
      case Tok::Ident: {
        if (is_keyword(t.text)) fail("an expression");
        take();
        if (is_builtin(t.text)) {
          if (!at(Tok::LParen)) throw ParseError(t.pos, "builtin '" + t.text + "' must be called with arguments");
          take();
          std::vector<ExprPtr> args;
          if (!at(Tok::RParen)) args = expression_list(Tok::RParen);
          expect(Tok::RParen, "')'");
          return Expr::call(t.pos, t.text, std::move(args));
        }
        return Expr::ident(t.pos, t.text);
      }
      case Tok::LParen: {
        take();
        auto items = expression_list(Tok::RParen);
        expect(Tok::RParen, "')'");
        if (items.size() == 1) return items.front();
        return Expr::tuple(t.pos, std::move(items));
      }
      case Tok::LBracket: {
        take();
        auto items = expression_list(Tok::RBracket);
        expect(Tok::RBracket, "']'");
        return Expr::list(t.pos, std::move(items));
      }
      default: fail("an expression");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

bool is_keyword(std::string_view w) { return std::find(keywords.begin(), keywords.end(), w) != keywords.end(); }
bool is_builtin(std::string_view w) { return std::find(builtins.begin(), builtins.end(), w) != builtins.end(); }

Document parse(std::string_view source) { return Parser(source).document(); }

ExprPtr parse_expression(std::string_view source) { return Parser(source).whole_expression(); }

}  // namespace volform::dsl
