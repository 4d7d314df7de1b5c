#include "qsp/syntax.hpp"

#include <cctype>

#include "qsp/error.hpp"

namespace qsp {

namespace {

struct Token {
  enum class Kind { number, name, op, end };
  Kind kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::number, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::name, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("+-*/^@(),").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::op, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
    }
  }
  out.push_back({Token::Kind::end, "", s.size()});
  return out;
}

SyntaxTree node(SyntaxNode::Kind k, std::size_t offset, std::vector<SyntaxTree> args = {}) {
  auto n = std::make_shared<SyntaxNode>();
  n->kind = k;
  n->offset = offset;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  SyntaxTree parse_all() {
    SyntaxTree t = sum();
    if (peek().kind != Token::Kind::end) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at_op(char c) const { return peek().kind == Token::Kind::op && peek().text[0] == c; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().kind == Token::Kind::end ? msg.empty() ? "unexpected end of input" : msg : msg,
                     peek().offset);
  }
  void expect(char c) {
    if (!at_op(c)) {
      if (peek().kind == Token::Kind::end) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  SyntaxTree sum() {
    SyntaxTree left = tensor();
    while (at_op('+') || at_op('-')) {
      const auto kind = at_op('+') ? SyntaxNode::Kind::add : SyntaxNode::Kind::sub;
      const std::size_t off = peek().offset;
      ++pos_;
      left = node(kind, off, {left, tensor()});
    }
    return left;
  }

  SyntaxTree tensor() {
    SyntaxTree first = unary();
    if (!at_op('@')) return first;
    std::vector<SyntaxTree> legs{first};
    const std::size_t off = peek().offset;
    while (at_op('@')) {
      ++pos_;
      legs.push_back(unary());
    }
    return node(SyntaxNode::Kind::tensor, off, std::move(legs));
  }

  SyntaxTree unary() {
    if (at_op('-')) {
      const std::size_t off = peek().offset;
      ++pos_;
      return node(SyntaxNode::Kind::negate, off, {unary()});
    }
    return product();
  }

  bool starts_primary() const {
    const auto& t = peek();
    return t.kind == Token::Kind::number || t.kind == Token::Kind::name || (t.kind == Token::Kind::op && t.text[0] == '(');
  }

  SyntaxTree product() {
    SyntaxTree left = power();
    for (;;) {
      if (at_op('*') || at_op('/')) {
        const auto kind = at_op('*') ? SyntaxNode::Kind::mul : SyntaxNode::Kind::div;
        const std::size_t off = peek().offset;
        ++pos_;
        left = node(kind, off, {left, power()});
      } else if (starts_primary()) {
        const std::size_t off = peek().offset;
        left = node(SyntaxNode::Kind::mul, off, {left, power()});
      } else {
        return left;
      }
    }
  }

  SyntaxTree power() {
    SyntaxTree base = primary();
    if (!at_op('^')) return base;
    const std::size_t off = peek().offset;
    ++pos_;
    SyntaxTree exponent;
    if (at_op('-')) {
      const std::size_t noff = peek().offset;
      ++pos_;
      exponent = node(SyntaxNode::Kind::negate, noff, {primary()});
    } else {
      exponent = primary();
    }
    return node(SyntaxNode::Kind::pow, off, {base, exponent});
  }

  SyntaxTree primary() {
    const Token t = peek();
    switch (t.kind) {
      case Token::Kind::number: {
        ++pos_;
        auto n = std::make_shared<SyntaxNode>();
        n->kind = SyntaxNode::Kind::number;
        n->number = Integer(t.text);
        n->offset = t.offset;
        return n;
      }
      case Token::Kind::name: {
        ++pos_;
        auto n = std::make_shared<SyntaxNode>();
        n->name = t.text;
        n->offset = t.offset;
        if (is_function_name(t.text) && at_op('(')) {
          ++pos_;
          n->kind = SyntaxNode::Kind::call;
          n->args.push_back(sum());
          while (at_op(',')) {
            ++pos_;
            n->args.push_back(sum());
          }
          expect(')');
        } else {
          n->kind = SyntaxNode::Kind::symbol;
        }
        return n;
      }
      case Token::Kind::op:
        if (t.text[0] == '(') {
          ++pos_;
          SyntaxTree inner = sum();
          expect(')');
          return inner;
        }
        fail("unexpected '" + t.text + "'");
      case Token::Kind::end:
        fail("unexpected end of input");
    }
    fail("unexpected token");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(const SyntaxTree& t) {
  switch (t->kind) {
    case SyntaxNode::Kind::add:
    case SyntaxNode::Kind::sub:
      return 1;
    case SyntaxNode::Kind::tensor:
      return 2;
    case SyntaxNode::Kind::negate:
      return 3;
    case SyntaxNode::Kind::mul:
    case SyntaxNode::Kind::div:
      return 4;
    case SyntaxNode::Kind::pow:
      return 5;
    default:
      return 6;
  }
}

std::string wrap(const SyntaxTree& t, int min_prec) {
  std::string s = print(t);
  return precedence(t) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

bool is_function_name(std::string_view name) {
  return name == "d" || name == "D" || name == "P_u" || name == "P_eta" || name == "comm" || name == "acomm";
}

SyntaxTree parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const SyntaxTree& t) {
  using K = SyntaxNode::Kind;
  switch (t->kind) {
    case K::number:
      return t->number.get_str();
    case K::symbol:
      return t->name;
    case K::call: {
      std::string s = t->name + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) s += (i ? ", " : "") + print(t->args[i]);
      return s + ")";
    }
    case K::negate:
      return "-" + wrap(t->args[0], 3);
    case K::add:
      return wrap(t->args[0], 1) + " + " + wrap(t->args[1], 2);
    case K::sub:
      return wrap(t->args[0], 1) + " - " + wrap(t->args[1], 2);
    case K::tensor: {
      std::string s;
      for (std::size_t i = 0; i < t->args.size(); ++i) s += (i ? " @ " : "") + wrap(t->args[i], 3);
      return s;
    }
    case K::mul:
      return wrap(t->args[0], 4) + "*" + wrap(t->args[1], 5);
    case K::div:
      return wrap(t->args[0], 4) + "/" + wrap(t->args[1], 5);
    case K::pow: {
      const auto& e = t->args[1];
      const std::string ex = e->kind == K::negate ? "-" + wrap(e->args[0], 6) : wrap(e, 6);
      return wrap(t->args[0], 6) + "^" + ex;
    }
  }
  return "";
}

}  // namespace qsp
