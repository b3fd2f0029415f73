#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "radsurf/mpoly.hpp"
#include "radsurf/radex.hpp"

namespace radsurf {

// Text grammar shared by the CLI and the hint files:
//
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*        '/' only in radical mode
//   factor  := base ('^' uint)?
//   base    := rational | symbol | '(' expr ')' | func
//   func    := sqrt(expr) | root(expr, uint [, uint])   radical mode only
//   rational:= digits ['/' digits]               one token, no spaces
//
// Implicit multiplication is not part of the grammar; the canonical printers
// emit parseable text.

namespace detail {

struct Token {
  enum Type { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen,
              Comma, End } type;
  std::string text;
  int line = 1, col = 1;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Type t, std::string text, int l, int c) {
    out.push_back({t, std::move(text), l, c});
  };
  while (i < src.size()) {
    char ch = src[i];
    int l = line, c = col;
    if (ch == '\n') { ++line; col = 1; ++i; continue; }
    if (std::isspace(static_cast<unsigned char>(ch))) { ++col; ++i; continue; }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      // rational literal a/b, slash glued to digits on both sides
      if (j < src.size() && src[j] == '/' && j + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      push(Token::Num, src.substr(i, j - i), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Token::Ident, src.substr(i, j - i), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Token::Type t;
    switch (ch) {
      case '+': t = Token::Plus; break;
      case '-': t = Token::Minus; break;
      case '*': t = Token::Star; break;
      case '/': t = Token::Slash; break;
      case '^': t = Token::Caret; break;
      case '(': t = Token::LParen; break;
      case ')': t = Token::RParen; break;
      case ',': t = Token::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
    push(t, std::string(1, ch), l, c);
    ++col;
    ++i;
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class ExprParser {
 public:
  ExprParser(const std::string& src, bool radical_mode,
             const std::set<Sym>* allowed)
      : toks_(lex(src)), radical_(radical_mode), allowed_(allowed) {}

  Rx parse() {
    Rx e = expr();
    expect(Token::End, "end of input");
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { if (cur().type != Token::End) ++pos_; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }
  void expect(Token::Type t, const std::string& what) {
    if (cur().type != t) fail("expected " + what);
    advance();
  }

  Rx expr() {
    bool neg = false;
    if (cur().type == Token::Minus) { neg = true; advance(); }
    Rx acc = term();
    if (neg) acc = rx_neg(acc);
    while (cur().type == Token::Plus || cur().type == Token::Minus) {
      bool minus = cur().type == Token::Minus;
      advance();
      Rx t = term();
      acc = rx_add({acc, minus ? rx_neg(t) : t});
    }
    return acc;
  }
  Rx term() {
    Rx acc = factor();
    while (cur().type == Token::Star || cur().type == Token::Slash) {
      bool div = cur().type == Token::Slash;
      if (div && !radical_) fail("'/' is not part of the polynomial grammar");
      advance();
      Rx f = factor();
      acc = div ? rx_mul({acc, rx_inv(f)}) : rx_mul({acc, f});
    }
    return acc;
  }
  Rx factor() {
    if (cur().type == Token::Minus && radical_) {
      advance();
      return rx_neg(factor());
    }
    Rx b = base();
    if (cur().type == Token::Caret) {
      advance();
      if (cur().type != Token::Num) fail("expected integer exponent");
      auto slash = cur().text.find('/');
      if (slash != std::string::npos) {
        // the lexer glued a rational literal; only the integer part is the
        // exponent, the rest rejoins the token stream as '/' digits
        Token den{Token::Num, cur().text.substr(slash + 1), cur().line,
                  cur().col + static_cast<int>(slash) + 1};
        Token div{Token::Slash, "/", cur().line,
                  cur().col + static_cast<int>(slash)};
        std::string num = cur().text.substr(0, slash);
        toks_[pos_] = Token{Token::Num, num, cur().line, cur().col};
        toks_.insert(toks_.begin() + static_cast<long>(pos_) + 1, {div, den});
      }
      long e = std::stol(cur().text);
      advance();
      if (e == 0) return rx_int(1);
      b = rx_ipow(b, static_cast<unsigned>(e));
    }
    return b;
  }
  Rx base() {
    switch (cur().type) {
      case Token::Num: {
        Rx c = rx_const(Rat::from_string(cur().text));
        advance();
        return c;
      }
      case Token::Ident: {
        std::string name = cur().text;
        if (radical_ && (name == "sqrt" || name == "root")) {
          advance();
          expect(Token::LParen, "'('");
          Rx arg = expr();
          unsigned k = 2, branch = 0;
          if (name == "root") {
            expect(Token::Comma, "','");
            k = read_uint("root index");
            if (cur().type == Token::Comma) {
              advance();
              branch = read_uint("root branch");
            }
          }
          expect(Token::RParen, "')'");
          if (k < 2) fail("root index must be >= 2");
          if (branch >= k) fail("root branch out of range");
          return rx_root(arg, k, branch);
        }
        auto sym = sym_from_name(name);
        if (!sym) fail("unknown symbol '" + name + "'");
        if (allowed_ && !allowed_->count(*sym))
          fail("variable '" + name + "' not allowed here");
        advance();
        return rx_var(*sym);
      }
      case Token::LParen: {
        advance();
        Rx e = expr();
        expect(Token::RParen, "')'");
        return e;
      }
      default:
        fail("expected a number, symbol or '('");
    }
  }
  unsigned read_uint(const std::string& what) {
    if (cur().type != Token::Num || cur().text.find('/') != std::string::npos)
      fail("expected " + what);
    unsigned v = static_cast<unsigned>(std::stoul(cur().text));
    advance();
    return v;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool radical_;
  const std::set<Sym>* allowed_;
};

inline MPoly rx_to_mpoly(const Rx& e) {
  switch (e->kind) {
    case RxKind::Const:
      return MPoly(e->value);
    case RxKind::Var:
      return MPoly::var(e->var);
    case RxKind::Add: {
      MPoly acc;
      for (auto& a : e->args) acc += rx_to_mpoly(a);
      return acc;
    }
    case RxKind::Mul: {
      MPoly acc(1);
      for (auto& a : e->args) acc *= rx_to_mpoly(a);
      return acc;
    }
    case RxKind::Neg:
      return -rx_to_mpoly(e->args[0]);
    case RxKind::IPow:
      return rx_to_mpoly(e->args[0]).pow(e->n);
    default:
      throw ParseError("not a polynomial expression", 0, 0);
  }
}

}  // namespace detail

inline MPoly parse_poly(const std::string& text,
                        const std::set<Sym>* allowed = nullptr) {
  detail::ExprParser p(text, /*radical_mode=*/false, allowed);
  return detail::rx_to_mpoly(p.parse());
}

inline Rx parse_radex(const std::string& text,
                      const std::set<Sym>* allowed = nullptr) {
  detail::ExprParser p(text, /*radical_mode=*/true, allowed);
  return p.parse();
}

}  // namespace radsurf
