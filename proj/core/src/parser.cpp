#include <cctype>
#include <optional>

#include "hdml/errors.hpp"
#include "hdml/formula.hpp"

namespace hdml {

namespace {

enum class Tok {
  End,
  Ident,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  UntilC,
  UntilL,
  LParen,
  RParen,
  Comma,
  Modality,  // <s>, [t a], ...
  Dia,
  BoxK,
  Next,  // X_a
  EU,
  UBar,
};

struct Token {
  Tok kind = Tok::End;
  std::size_t pos = 0;
  std::string text;    // identifier, action of a modality / X_a
  bool box = false;    // [..] rather than <..>
  bool start = false;  // s rather than t
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@' || c == '\'' || c == '.';
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip_ws();
    Token t;
    t.pos = i_;
    if (i_ >= s_.size()) return t;
    const char c = s_[i_];
    auto single = [&](Tok k) {
      ++i_;
      t.kind = k;
      return t;
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '~': return single(Tok::Not);
      case '!': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      default: break;
    }
    if (s_.compare(i_, 2, "->") == 0) {
      i_ += 2;
      t.kind = Tok::Implies;
      return t;
    }
    if (s_.compare(i_, 3, "<->") == 0) {
      i_ += 3;
      t.kind = Tok::Iff;
      return t;
    }
    if (c == '<' || c == '[') return modality(t, c == '[');
    if (ident_start(c)) {
      std::size_t j = i_;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      t.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
      if (t.text == "true") t.kind = Tok::True;
      else if (t.text == "false") t.kind = Tok::False;
      else if (t.text == "U_C") t.kind = Tok::UntilC;
      else if (t.text == "U_L") t.kind = Tok::UntilL;
      else if (t.text == "dia") t.kind = Tok::Dia;
      else if (t.text == "box") t.kind = Tok::BoxK;
      else if (t.text == "EU") t.kind = Tok::EU;
      else if (t.text == "U_bar") t.kind = Tok::UBar;
      else if (t.text.size() > 2 && t.text.compare(0, 2, "X_") == 0) {
        t.kind = Tok::Next;
        t.text = t.text.substr(2);
      } else {
        t.kind = Tok::Ident;
      }
      return t;
    }
    throw ParseError(i_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Token modality(Token t, bool box) {
    const char close = box ? ']' : '>';
    ++i_;
    skip_ws();
    if (i_ >= s_.size() || (s_[i_] != 's' && s_[i_] != 't'))
      throw ParseError(i_, "expected 's' or 't' in modality");
    t.start = s_[i_] == 's';
    ++i_;
    if (i_ < s_.size() && ident_char(s_[i_]))
      throw ParseError(i_, "modality must be s or t, followed by a space before a label");
    skip_ws();
    if (i_ < s_.size() && ident_start(s_[i_])) {
      std::size_t j = i_;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      t.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
      skip_ws();
    }
    if (i_ >= s_.size() || s_[i_] != close)
      throw ParseError(i_, std::string("expected '") + close + "' to close modality");
    ++i_;
    t.kind = Tok::Modality;
    t.box = box;
    return t;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const Vocabulary* vocab) : lex_(text), vocab_(vocab) { advance(); }

  Formula parse_all() {
    Formula f = implication();
    if (cur_.kind != Tok::End) throw ParseError(cur_.pos, "unexpected trailing input");
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) throw ParseError(cur_.pos, std::string("expected ") + what);
    advance();
  }

  Formula implication() {
    Formula lhs = until();
    if (cur_.kind == Tok::Implies) {
      advance();
      return Formula::implies(lhs, implication());
    }
    if (cur_.kind == Tok::Iff) {
      advance();
      return iff(lhs, implication());
    }
    return lhs;
  }

  Formula until() {
    Formula lhs = disjunction();
    if (cur_.kind == Tok::UntilC || cur_.kind == Tok::UntilL) {
      const bool ctl = cur_.kind == Tok::UntilC;
      advance();
      Formula rhs = until();
      return ctl ? Formula::until_c(lhs, rhs) : Formula::until_l(lhs, rhs);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (cur_.kind == Tok::Or) {
      advance();
      acc = disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (cur_.kind == Tok::And) {
      advance();
      acc = conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Not: advance(); return neg(unary());
      case Tok::Dia: advance(); return diamond(unary());
      case Tok::BoxK: advance(); return box_k(unary());
      case Tok::Next: {
        check_action(t.text, t.pos);
        advance();
        return ltrl_next(t.text, unary());
      }
      case Tok::Modality: {
        if (!t.text.empty()) check_action(t.text, t.pos);
        advance();
        Formula arg = unary();
        if (t.text.empty()) {
          if (t.start) return t.box ? box_during(arg) : Formula::during(arg);
          return t.box ? box_after(arg) : Formula::after(arg);
        }
        if (t.start) return t.box ? box_during_l(t.text, arg) : Formula::during_l(t.text, arg);
        return t.box ? box_after_l(t.text, arg) : Formula::after_l(t.text, arg);
      }
      default: return atom();
    }
  }

  Formula atom() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::True: advance(); return top();
      case Tok::False: advance(); return Formula::bottom();
      case Tok::Ident: {
        check_prop(t.text, t.pos);
        advance();
        return Formula::prop(t.text);
      }
      case Tok::LParen: {
        advance();
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::EU:
      case Tok::UBar: {
        advance();
        expect(Tok::LParen, "'(' after until sugar");
        Formula a = implication();
        expect(Tok::Comma, "','");
        Formula b = implication();
        expect(Tok::RParen, "')'");
        return t.kind == Tok::EU ? exists_until(a, b) : ltrl_until(a, b);
      }
      case Tok::End: throw ParseError(t.pos, "unexpected end of formula");
      default: throw ParseError(t.pos, "expected a formula");
    }
  }

  void check_prop(const std::string& p, std::size_t pos) const {
    if (!vocab_ || p.front() == '@') return;
    if (!vocab_->props.count(p)) throw UnknownSymbolError(pos, p);
  }

  void check_action(const std::string& a, std::size_t pos) const {
    if (vocab_ && !vocab_->actions.count(a)) throw UnknownSymbolError(pos, a);
  }

  Lexer lex_;
  const Vocabulary* vocab_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text, nullptr).parse_all(); }

Formula parse(std::string_view text, const Vocabulary& vocab) { return Parser(text, &vocab).parse_all(); }

}  // namespace hdml
