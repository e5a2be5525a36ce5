#include "gdlsolve/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gdlsolve {
namespace {

struct Token {
  enum class Kind { Ident, Var, Int, LPar, RPar, LBrace, RBrace, Comma, If, Dot, Not, End };
  Kind kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = s_[pos_];
    if (c == '(') { one(Token::Kind::LPar); return; }
    if (c == ')') { one(Token::Kind::RPar); return; }
    if (c == '{') { one(Token::Kind::LBrace); return; }
    if (c == '}') { one(Token::Kind::RBrace); return; }
    if (c == ',') { one(Token::Kind::Comma); return; }
    if (c == '.') { one(Token::Kind::Dot); return; }
    if (c == ':') {
      if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '-') {
        tok_.kind = Token::Kind::If;
        bump(); bump();
        return;
      }
      throw ParseError(line_, col_, "expected ':-'");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < s_.size() &&
         std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      std::string num;
      if (c == '-') { num += '-'; bump(); }
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        num += s_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::Int;
      tok_.value = std::stoll(num);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        id += s_[pos_];
        bump();
      }
      if (id == "not") {
        tok_.kind = Token::Kind::Not;
      } else if (std::isupper(static_cast<unsigned char>(id[0]))) {
        tok_.kind = Token::Kind::Var;
      } else {
        tok_.kind = Token::Kind::Ident;
      }
      tok_.text = std::move(id);
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '%') {
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void one(Token::Kind k) {
    tok_.kind = k;
    bump();
  }

  void bump() {
    if (s_[pos_] == '\n') { ++line_; col_ = 1; }
    else ++col_;
    ++pos_;
  }

  std::string_view s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lx_(s) {}

  GdlProgram run() {
    GdlProgram p;
    while (lx_.peek().kind != Token::Kind::End) p.rules.push_back(rule());
    return p;
  }

 private:
  Token expect(Token::Kind k, const char* what) {
    if (lx_.peek().kind != k) {
      const Token& t = lx_.peek();
      throw ParseError(t.line, t.col, std::string("expected ") + what);
    }
    return lx_.take();
  }

  Rule rule() {
    Rule r;
    const Token& t = lx_.peek();
    if (t.kind == Token::Kind::If) {
      r.head_kind = Rule::HeadKind::None;
    } else if (t.kind == Token::Kind::LBrace) {
      lx_.take();
      r.head_kind = Rule::HeadKind::Choice;
      r.head = term();
      expect(Token::Kind::RBrace, "'}'");
    } else {
      r.head_kind = Rule::HeadKind::Atom;
      int line = t.line, col = t.col;
      r.head = term();
      if (r.head.kind == Term::Kind::Variable)
        throw ParseError(line, col, "variable cannot head a rule");
    }
    if (lx_.peek().kind == Token::Kind::If) {
      lx_.take();
      r.body.push_back(literal());
      while (lx_.peek().kind == Token::Kind::Comma) {
        lx_.take();
        r.body.push_back(literal());
      }
    } else if (r.head_kind == Rule::HeadKind::Atom &&
               r.head.functor() == "role" && !r.head.is_ground()) {
      const Token& d = lx_.peek();
      throw ParseError(d.line, d.col, "variable in role fact");
    }
    expect(Token::Kind::Dot, "'.'");
    return r;
  }

  Literal literal() {
    Literal l;
    if (lx_.peek().kind == Token::Kind::Not) {
      lx_.take();
      l.positive = false;
    }
    int line = lx_.peek().line, col = lx_.peek().col;
    l.atom = term();
    if (!l.positive && l.atom.kind == Term::Kind::Variable)
      throw ParseError(line, col, "bare variable as negated literal");
    return l;
  }

  Term term() {
    Token t = lx_.take();
    switch (t.kind) {
      case Token::Kind::Int: return Term::integer(t.value);
      case Token::Kind::Var: return Term::variable(t.text);
      case Token::Kind::Ident: {
        if (lx_.peek().kind != Token::Kind::LPar) return Term::constant(t.text);
        lx_.take();
        std::vector<Term> args;
        args.push_back(term());
        while (lx_.peek().kind == Token::Kind::Comma) {
          lx_.take();
          args.push_back(term());
        }
        expect(Token::Kind::RPar, "')'");
        return Term::compound(t.text, std::move(args));
      }
      default:
        throw ParseError(t.line, t.col, "expected a term");
    }
  }

  Lexer lx_;
};

}  // namespace

GdlProgram parse_gdl(std::string_view text) { return Parser(text).run(); }

GdlProgram parse_gdl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gdl(buf.str());
}

}  // namespace gdlsolve
