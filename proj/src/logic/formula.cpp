#include "ptutor/logic/formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ptutor/error.hpp"

namespace ptutor::logic {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Binding strength used by the renderer; larger binds tighter.
int precedence(Connective op) {
  switch (op) {
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not: return 5;
    case Connective::Atom: return 6;
  }
  return 0;
}

bool right_associative(Connective op) {
  return op == Connective::Implies || op == Connective::Iff;
}

std::string_view symbol(Connective op) {
  switch (op) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Implies: return "->";
    case Connective::Iff: return "<->";
    default: return "";
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.connective()) {
    case Connective::Atom:
      out.push_back(f.letter());
      return;
    case Connective::Not: {
      out.push_back('~');
      bool wrap = f.operand().is_binary();
      if (wrap) out.push_back('(');
      render_into(f.operand(), out);
      if (wrap) out.push_back(')');
      return;
    }
    default: break;
  }
  const int p = precedence(f.connective());
  const bool rassoc = right_associative(f.connective());
  const int lp = precedence(f.left().connective());
  const int rp = precedence(f.right().connective());
  const bool wrap_left = rassoc ? lp <= p : lp < p;
  const bool wrap_right = rassoc ? rp < p : rp <= p;

  if (wrap_left) out.push_back('(');
  render_into(f.left(), out);
  if (wrap_left) out.push_back(')');
  out.append(symbol(f.connective()));
  if (wrap_right) out.push_back('(');
  render_into(f.right(), out);
  if (wrap_right) out.push_back(')');
}

enum class Tok { Atom, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  char letter;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Formula parse() {
    if (current_.kind == Tok::End) throw MalformedFormula("empty formula", current_.offset);
    Formula f = iff();
    if (current_.kind != Tok::End) throw MalformedFormula("unexpected token", current_.offset);
    return f;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, 0, at};
      return;
    }
    const char c = text_[pos_];
    if (c >= 'A' && c <= 'Z') {
      ++pos_;
      current_ = {Tok::Atom, c, at};
      return;
    }
    switch (c) {
      case '~': ++pos_; current_ = {Tok::Not, 0, at}; return;
      case '&': ++pos_; current_ = {Tok::And, 0, at}; return;
      case '|': ++pos_; current_ = {Tok::Or, 0, at}; return;
      case '(': ++pos_; current_ = {Tok::LParen, 0, at}; return;
      case ')': ++pos_; current_ = {Tok::RParen, 0, at}; return;
      case '-':
        if (text_.substr(pos_, 2) == "->") {
          pos_ += 2;
          current_ = {Tok::Implies, 0, at};
          return;
        }
        break;
      case '<':
        if (text_.substr(pos_, 3) == "<->") {
          pos_ += 3;
          current_ = {Tok::Iff, 0, at};
          return;
        }
        break;
      default: break;
    }
    throw MalformedFormula(std::string("unexpected character '") + c + "'", at);
  }

  Formula iff() {
    Formula lhs = implies();
    if (current_.kind == Tok::Iff) {
      advance();
      return Iff(std::move(lhs), iff());
    }
    return lhs;
  }

  Formula implies() {
    Formula lhs = disjunction();
    if (current_.kind == Tok::Implies) {
      advance();
      return Implies(std::move(lhs), implies());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (current_.kind == Tok::Or) {
      advance();
      lhs = Or(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (current_.kind == Tok::And) {
      advance();
      lhs = And(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    if (current_.kind == Tok::Not) {
      advance();
      return Not(unary());
    }
    return primary();
  }

  Formula primary() {
    if (current_.kind == Tok::Atom) {
      Formula f = Atom(current_.letter);
      advance();
      return f;
    }
    if (current_.kind == Tok::LParen) {
      const std::size_t open = current_.offset;
      advance();
      Formula f = iff();
      if (current_.kind != Tok::RParen) {
        throw MalformedFormula("unbalanced '(' opened at " + std::to_string(open), current_.offset);
      }
      advance();
      return f;
    }
    if (current_.kind == Tok::End) throw MalformedFormula("unexpected end of formula", current_.offset);
    throw MalformedFormula("expected atom or '('", current_.offset);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, 0, 0};
};

}  // namespace

Formula Formula::atom(char letter) {
  if (letter < 'A' || letter > 'Z') throw std::invalid_argument("atom must be A-Z");
  auto n = std::make_shared<Node>();
  n->op = Connective::Atom;
  n->letter = letter;
  n->hash = mix(0x51ed27, static_cast<std::size_t>(letter));
  return Formula(std::move(n));
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->op = Connective::Not;
  n->depth = operand.depth() + 1;
  n->size = operand.size() + 1;
  n->hash = mix(0x7a1, operand.hash());
  n->lhs = std::move(operand);
  return Formula(std::move(n));
}

Formula Formula::binary(Connective op, Formula left, Formula right) {
  if (op == Connective::Atom || op == Connective::Not) {
    throw std::invalid_argument("binary() needs a binary connective");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->depth = std::max(left.depth(), right.depth()) + 1;
  n->size = left.size() + right.size() + 1;
  n->hash = mix(mix(static_cast<std::size_t>(op) * 1315423911u, left.hash()), right.hash());
  n->lhs = std::move(left);
  n->rhs = std::move(right);
  return Formula(std::move(n));
}

char Formula::letter() const {
  assert(is(Connective::Atom));
  return node_->letter;
}

const Formula& Formula::operand() const {
  assert(is(Connective::Not));
  return node_->lhs;
}

const Formula& Formula::left() const {
  assert(is_binary());
  return node_->lhs;
}

const Formula& Formula::right() const {
  assert(is_binary());
  return node_->rhs;
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.empty() || b.empty()) return false;
  if (a.hash() != b.hash() || a.size() != b.size() || a.connective() != b.connective()) return false;
  switch (a.connective()) {
    case Connective::Atom: return a.letter() == b.letter();
    case Connective::Not: return a.operand() == b.operand();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.empty() || b.empty()) return a.empty() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.connective() <=> b.connective(); c != 0) return c;
  switch (a.connective()) {
    case Connective::Atom: return a.letter() <=> b.letter();
    case Connective::Not: return a.operand() <=> b.operand();
    default:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render(const Formula& f) {
  std::string out;
  if (f.empty()) return out;
  out.reserve(f.size() * 2);
  render_into(f, out);
  return out;
}

}  // namespace ptutor::logic
