#include "gslab/parser.hpp"

#include <cctype>

namespace gslab {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message),
      kind_(kind),
      position_(position) {}

namespace {

struct Token {
  enum class Type { number, identifier, plus, minus, star, caret, lparen, rparen, end };
  Type type;
  std::size_t pos;
  std::string text;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  JetExpression parse_all() {
    JetExpression e = expr();
    if (tok_.type != Token::Type::end) fail_unexpected();
    return e;
  }

 private:
  bool is_ident_char(char ch) const {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  }

  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= src_.size()) {
      tok_ = {Token::Type::end, start, ""};
      return;
    }
    char ch = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      if (i_ + 1 < src_.size() && src_[i_] == '/' &&
          std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
        ++i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      }
      if (i_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[i_])) ||
                               src_[i_] == '_' || src_[i_] == '.'))
        throw ParseError(ParseError::Kind::syntax, i_,
                         "implicit multiplication or malformed number");
      tok_ = {Token::Type::number, start, std::string(src_.substr(start, i_ - start))};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      while (i_ < src_.size() && is_ident_char(src_[i_])) ++i_;
      tok_ = {Token::Type::identifier, start, std::string(src_.substr(start, i_ - start))};
      return;
    }
    ++i_;
    switch (ch) {
      case '+': tok_ = {Token::Type::plus, start, "+"}; return;
      case '-': tok_ = {Token::Type::minus, start, "-"}; return;
      case '*': tok_ = {Token::Type::star, start, "*"}; return;
      case '^': tok_ = {Token::Type::caret, start, "^"}; return;
      case '(': tok_ = {Token::Type::lparen, start, "("}; return;
      case ')': tok_ = {Token::Type::rparen, start, ")"}; return;
      default:
        throw ParseError(ParseError::Kind::syntax, start,
                         std::string("unexpected character '") + ch + "'");
    }
  }

  [[noreturn]] void fail_unexpected() const {
    if (tok_.type == Token::Type::end)
      throw ParseError(ParseError::Kind::syntax, tok_.pos, "unexpected end of input");
    if (tok_.type == Token::Type::identifier || tok_.type == Token::Type::number ||
        tok_.type == Token::Type::lparen)
      throw ParseError(ParseError::Kind::syntax, tok_.pos,
                       "implicit multiplication is not allowed before '" + tok_.text + "'");
    throw ParseError(ParseError::Kind::syntax, tok_.pos, "unexpected '" + tok_.text + "'");
  }

  JetExpression expr() {
    JetExpression e = term();
    while (tok_.type == Token::Type::plus || tok_.type == Token::Type::minus) {
      bool minus = tok_.type == Token::Type::minus;
      advance();
      JetExpression rhs = term();
      if (minus)
        e -= rhs;
      else
        e += rhs;
    }
    return e;
  }

  JetExpression term() {
    JetExpression e = unary();
    while (tok_.type == Token::Type::star) {
      advance();
      e = e * unary();
    }
    return e;
  }

  JetExpression unary() {
    if (tok_.type == Token::Type::minus) {
      advance();
      return -unary();
    }
    if (tok_.type == Token::Type::plus) {
      advance();
      return unary();
    }
    return power();
  }

  JetExpression power() {
    JetExpression base = primary();
    if (tok_.type != Token::Type::caret) return base;
    advance();
    if (tok_.type == Token::Type::minus)
      throw ParseError(ParseError::Kind::bad_exponent, tok_.pos, "negative exponent");
    if (tok_.type != Token::Type::number)
      throw ParseError(ParseError::Kind::bad_exponent, tok_.pos,
                       "exponent must be a non-negative integer literal");
    if (tok_.text.find('/') != std::string::npos)
      throw ParseError(ParseError::Kind::bad_exponent, tok_.pos, "fractional exponent");
    if (tok_.text.size() > 6)
      throw ParseError(ParseError::Kind::bad_exponent, tok_.pos, "exponent too large");
    unsigned exponent = static_cast<unsigned>(std::stoul(tok_.text));
    advance();
    if (tok_.type == Token::Type::caret)
      throw ParseError(ParseError::Kind::syntax, tok_.pos, "chained exponent needs parentheses");
    return base.pow(exponent);
  }

  JetExpression primary() {
    switch (tok_.type) {
      case Token::Type::number: {
        Rational q;
        try {
          q = parse_rational(tok_.text);
        } catch (const std::invalid_argument& e) {
          throw ParseError(ParseError::Kind::syntax, tok_.pos, e.what());
        }
        advance();
        return JetExpression(q);
      }
      case Token::Type::identifier: {
        auto sym = parse_symbol(tok_.text);
        if (!sym)
          throw ParseError(ParseError::Kind::unknown_identifier, tok_.pos,
                           "unknown identifier '" + tok_.text + "'");
        advance();
        return JetExpression::symbol(*sym);
      }
      case Token::Type::lparen: {
        advance();
        JetExpression e = expr();
        if (tok_.type != Token::Type::rparen)
          throw ParseError(ParseError::Kind::syntax, tok_.pos, "expected ')'");
        advance();
        return e;
      }
      default:
        fail_unexpected();
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_{Token::Type::end, 0, ""};
};

}  // namespace

JetExpression parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace gslab
