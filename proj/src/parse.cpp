#include <cctype>

#include "rlat/expr.hpp"

namespace rlat {

namespace {

struct Token {
  enum class Kind {
    word,
    quoted,
    plus,
    star,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    amp,
    cmp,
    arrow,
    end,
  };

  Kind kind = Kind::end;
  std::string text;
  Cmp cmp = Cmp::eq;
  SourceLoc loc;
};

const char* token_name(Token::Kind k) {
  switch (k) {
    case Token::Kind::word: return "name";
    case Token::Kind::quoted: return "quoted value";
    case Token::Kind::plus: return "'+'";
    case Token::Kind::star: return "'*'";
    case Token::Kind::lparen: return "'('";
    case Token::Kind::rparen: return "')'";
    case Token::Kind::lbracket: return "'['";
    case Token::Kind::rbracket: return "']'";
    case Token::Kind::comma: return "','";
    case Token::Kind::amp: return "'&'";
    case Token::Kind::cmp: return "comparison";
    case Token::Kind::arrow: return "'->'";
    case Token::Kind::end: return "end of input";
  }
  return "?";
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      bool done = t.kind == Token::Kind::end;
      out.push_back(std::move(t));
      if (done) return out;
    }
  }

 private:
  void skip_space() {
    while (at_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[at_]))) {
      step();
    }
  }

  void step() {
    if (text_[at_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++at_;
  }

  SourceLoc here() const { return {at_, line_, col_}; }

  [[noreturn]] void fail(const std::string& message, const std::string& expected) {
    throw SyntaxError("line " + std::to_string(line_) + " col " + std::to_string(col_) + ": " +
                          message,
                      here(), expected);
  }

  Token next() {
    SourceLoc loc = here();
    if (at_ >= text_.size()) return {Token::Kind::end, "", Cmp::eq, loc};
    char c = text_[at_];

    if (word_char(c)) {
      std::string word;
      while (at_ < text_.size() && word_char(text_[at_])) {
        word += text_[at_];
        step();
      }
      return {Token::Kind::word, std::move(word), Cmp::eq, loc};
    }

    if (c == '\'') {
      step();
      std::string value;
      while (at_ < text_.size() && text_[at_] != '\'') {
        if (text_[at_] == '\\') {
          step();
          if (at_ >= text_.size()) break;
        }
        value += text_[at_];
        step();
      }
      if (at_ >= text_.size()) fail("unterminated quoted value", "closing quote");
      step();
      return {Token::Kind::quoted, std::move(value), Cmp::eq, loc};
    }

    auto simple = [&](Token::Kind kind) {
      step();
      return Token{kind, std::string(1, c), Cmp::eq, loc};
    };
    switch (c) {
      case '+': return simple(Token::Kind::plus);
      case '*': return simple(Token::Kind::star);
      case '(': return simple(Token::Kind::lparen);
      case ')': return simple(Token::Kind::rparen);
      case '[': return simple(Token::Kind::lbracket);
      case ']': return simple(Token::Kind::rbracket);
      case ',': return simple(Token::Kind::comma);
      case '&': return simple(Token::Kind::amp);
      case '=':
        step();
        return {Token::Kind::cmp, "=", Cmp::eq, loc};
      case '!':
        step();
        if (at_ >= text_.size() || text_[at_] != '=') fail("'!' must begin '!='", "'='");
        step();
        return {Token::Kind::cmp, "!=", Cmp::ne, loc};
      case '<':
        step();
        if (at_ < text_.size() && text_[at_] == '=') {
          step();
          return {Token::Kind::cmp, "<=", Cmp::le, loc};
        }
        return {Token::Kind::cmp, "<", Cmp::lt, loc};
      case '>':
        step();
        if (at_ < text_.size() && text_[at_] == '=') {
          step();
          return {Token::Kind::cmp, ">=", Cmp::ge, loc};
        }
        return {Token::Kind::cmp, ">", Cmp::gt, loc};
      case '-':
        step();
        if (at_ >= text_.size() || text_[at_] != '>') fail("'-' must begin '->'", "'>'");
        step();
        return {Token::Kind::arrow, "->", Cmp::eq, loc};
      default:
        fail(std::string("unexpected character '") + c + "'", "a token");
    }
  }

  const std::string& text_;
  std::size_t at_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool reserved_word(const std::string& w) {
  return w == "select" || w == "project" || w == "rename" || w == "divide" || w == "minus";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr run() {
    ExprPtr e = parse_union();
    expect(Token::Kind::end);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[at_]; }

  Token take() { return tokens_[at_++]; }

  bool accept(Token::Kind kind) {
    if (peek().kind != kind) return false;
    ++at_;
    return true;
  }

  Token expect(Token::Kind kind) {
    if (peek().kind != kind) fail(token_name(kind));
    return take();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw SyntaxError("line " + std::to_string(t.loc.line) + " col " +
                          std::to_string(t.loc.column) + ": expected " + expected + ", got " +
                          (t.kind == Token::Kind::word || t.kind == Token::Kind::quoted
                               ? "'" + t.text + "'"
                               : token_name(t.kind)),
                      t.loc, expected);
  }

  ExprPtr parse_union() {
    ExprPtr left = parse_join();
    while (peek().kind == Token::Kind::plus) {
      SourceLoc loc = take().loc;
      left = make_union(std::move(left), parse_join(), loc);
    }
    return left;
  }

  ExprPtr parse_join() {
    ExprPtr left = parse_atom();
    while (peek().kind == Token::Kind::star) {
      SourceLoc loc = take().loc;
      left = make_join(std::move(left), parse_atom(), loc);
    }
    return left;
  }

  std::string expect_name(const char* what) {
    if (peek().kind != Token::Kind::word) fail(what);
    Token t = take();
    if (reserved_word(t.text)) {
      throw SyntaxError("line " + std::to_string(t.loc.line) + " col " +
                            std::to_string(t.loc.column) + ": '" + t.text +
                            "' is a reserved word",
                        t.loc, what);
    }
    return std::move(t.text);
  }

  PredAtom parse_pred_atom() {
    SourceLoc loc = peek().loc;
    std::string left = expect_name("attribute name");
    if (peek().kind != Token::Kind::cmp) fail("comparison operator");
    Cmp op = take().cmp;
    PredAtom atom;
    atom.left = std::move(left);
    atom.op = op;
    atom.loc = loc;
    if (peek().kind == Token::Kind::quoted) {
      atom.right = take().text;
      atom.right_quoted = true;
    } else if (peek().kind == Token::Kind::word) {
      atom.right = take().text;
    } else {
      fail("attribute name or value");
    }
    return atom;
  }

  PredSyntax parse_predicate() {
    PredSyntax pred;
    pred.atoms.push_back(parse_pred_atom());
    while (accept(Token::Kind::amp)) {
      pred.atoms.push_back(parse_pred_atom());
    }
    return pred;
  }

  ExprPtr parse_bracket(SourceLoc loc) {
    if (peek().kind != Token::Kind::word) fail("attribute name or predicate");
    // One name followed by a comparison starts a predicate; names followed
    // by names (or ']') make a header literal.
    if (tokens_[at_ + 1].kind == Token::Kind::cmp) {
      PredSyntax pred = parse_predicate();
      expect(Token::Kind::rbracket);
      return make_pred_literal(std::move(pred), loc);
    }
    std::vector<std::string> attrs;
    while (peek().kind == Token::Kind::word) {
      attrs.push_back(expect_name("attribute name"));
    }
    expect(Token::Kind::rbracket);
    return make_empty_literal(std::move(attrs), loc);
  }

  ExprPtr parse_call(const std::string& func, SourceLoc loc) {
    expect(Token::Kind::lparen);
    ExprPtr first = parse_union();
    expect(Token::Kind::comma);
    ExprPtr result;
    if (func == "select") {
      PredSyntax pred = parse_predicate();
      result = make_select(std::move(first), std::move(pred), loc);
    } else if (func == "project") {
      std::vector<std::string> attrs;
      attrs.push_back(expect_name("attribute name"));
      while (peek().kind == Token::Kind::word) {
        attrs.push_back(expect_name("attribute name"));
      }
      result = make_project(std::move(first), std::move(attrs), loc);
    } else if (func == "rename") {
      std::string from = expect_name("attribute name");
      expect(Token::Kind::arrow);
      std::string to = expect_name("attribute name");
      result = make_rename(std::move(first), std::move(from), std::move(to), loc);
    } else if (func == "divide") {
      result = make_divide(std::move(first), parse_union(), loc);
    } else {
      result = make_minus(std::move(first), parse_union(), loc);
    }
    expect(Token::Kind::rparen);
    return result;
  }

  ExprPtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::word: {
        Token w = take();
        if (auto code = special_from_name(w.text)) {
          return make_special(*code, w.loc);
        }
        if (reserved_word(w.text)) {
          return parse_call(w.text, w.loc);
        }
        return make_name(std::move(w.text), w.loc);
      }
      case Token::Kind::lparen: {
        take();
        ExprPtr e = parse_union();
        expect(Token::Kind::rparen);
        return e;
      }
      case Token::Kind::lbracket: {
        SourceLoc loc = take().loc;
        return parse_bracket(loc);
      }
      default:
        fail("an expression");
    }
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace rlat
