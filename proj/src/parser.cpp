#include "explikit/parser.hpp"

#include <cctype>
#include <set>
#include <string>

#include "explikit/error.hpp"

namespace explikit {
namespace {

enum class Tok { Name, Variable, LParen, RParen, Comma, Dot, Neck, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    const std::size_t line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::End, "", line, col};
    const char c = src_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) return word(Tok::Name, line, col);
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      return word(Tok::Variable, line, col);
    }
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, col};
      case ')': advance(); return {Tok::RParen, ")", line, col};
      case ',': advance(); return {Tok::Comma, ",", line, col};
      case '.': advance(); return {Tok::Dot, ".", line, col};
      case ':':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
          advance();
          advance();
          return {Tok::Neck, ":-", line, col};
        }
        break;
      default:
        break;
    }
    throw SyntaxError(line, col, "a name, a variable or punctuation");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token word(Tok kind, std::size_t line, std::size_t col) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
    return {kind, std::string(src_.substr(start, pos_ - start)), line, col};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { bump(); }

  bool at_end() const { return cur_.kind == Tok::End; }
  const Token& current() const { return cur_; }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw SyntaxError(cur_.line, cur_.column, what);
    Token t = cur_;
    bump();
    return t;
  }

  bool accept(Tok kind) {
    if (cur_.kind != kind) return false;
    bump();
    return true;
  }

  Atom atom() {
    Token name = expect(Tok::Name, "a predicate name");
    Atom out{name.text, {}};
    if (!accept(Tok::LParen)) return out;
    do {
      out.args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "',' or ')'");
    return out;
  }

  Term term() {
    if (cur_.kind == Tok::Variable) {
      Term t = Term::variable(cur_.text);
      bump();
      return t;
    }
    Token name = expect(Tok::Name, "a constant or a variable");
    if (cur_.kind == Tok::LParen) {
      throw SyntaxError(cur_.line, cur_.column, "',' or ')' (compound terms are not supported)");
    }
    return Term::constant(name.text);
  }

  Clause clause() {
    Clause out{atom(), {}};
    if (accept(Tok::Neck)) {
      do {
        out.body.push_back(atom());
      } while (accept(Tok::Comma));
    }
    expect(Tok::Dot, out.body.empty() ? "':-' or '.'" : "',' or '.'");
    return out;
  }

 private:
  void bump() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_{Tok::End, "", 0, 0};
};

}  // namespace

KnowledgeBase parse_program(std::string_view source, ParseOptions options) {
  Parser parser(source);
  KnowledgeBase kb;
  while (!parser.at_end()) {
    const std::size_t line = parser.current().line;
    Clause c = parser.clause();
    if (options.require_ground_facts && c.is_fact() && !c.head.is_ground()) {
      throw NonGroundFact(line);
    }
    kb.add(std::move(c));
  }
  return kb;
}

ExampleSet parse_examples(std::string_view source) {
  Parser parser(source);
  ExampleSet out;
  std::set<Atom> seen_pos, seen_neg;
  while (!parser.at_end()) {
    Token polarity = parser.expect(Tok::Name, "'pos' or 'neg'");
    if (polarity.text != "pos" && polarity.text != "neg") {
      throw SyntaxError(polarity.line, polarity.column, "'pos' or 'neg'");
    }
    parser.expect(Tok::LParen, "'('");
    Atom atom = parser.atom();
    parser.expect(Tok::RParen, "')'");
    parser.expect(Tok::Dot, "'.'");

    if (!atom.is_ground()) throw NotGround(render(atom));
    if (!out.target) {
      out.target = atom.key();
    } else if (*out.target != atom.key()) {
      throw MixedTarget(out.target->to_string() + " and " + atom.key().to_string());
    }
    const bool positive = polarity.text == "pos";
    if ((positive ? seen_neg : seen_pos).contains(atom)) {
      throw DisjointnessViolation(render(atom));
    }
    if (positive) {
      if (seen_pos.insert(atom).second) out.positives.push_back(std::move(atom));
    } else {
      if (seen_neg.insert(atom).second) out.negatives.push_back(std::move(atom));
    }
  }
  return out;
}

Atom parse_atom(std::string_view source) {
  Parser parser(source);
  Atom atom = parser.atom();
  parser.accept(Tok::Dot);
  if (!parser.at_end()) {
    throw SyntaxError(parser.current().line, parser.current().column, "end of input");
  }
  return atom;
}

Clause parse_clause(std::string_view source) {
  Parser parser(source);
  Clause c = parser.clause();
  if (!parser.at_end()) {
    throw SyntaxError(parser.current().line, parser.current().column, "end of input");
  }
  return c;
}

}  // namespace explikit
