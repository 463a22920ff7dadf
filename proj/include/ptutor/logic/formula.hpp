#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace ptutor::logic {

enum class Connective : std::uint8_t { Atom, Not, And, Or, Implies, Iff };

/// Immutable propositional formula. Copies share structure.
///
/// Binding strength, tightest first: `~`, `&`, `|`, `->`, `<->`.
/// `&` and `|` associate to the left, `->` and `<->` to the right.
class Formula {
 public:
  /// An empty placeholder; only assignment, comparison and empty() are valid.
  Formula() = default;

  static Formula atom(char letter);
  static Formula negation(Formula operand);
  static Formula binary(Connective op, Formula left, Formula right);

  bool empty() const noexcept { return node_ == nullptr; }
  Connective connective() const noexcept;
  bool is(Connective op) const noexcept;
  bool is_binary() const noexcept;

  char letter() const;
  const Formula& operand() const;
  const Formula& left() const;
  const Formula& right() const;

  std::size_t depth() const noexcept;
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  /// Total structural order; consistent with ==.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective op = Connective::Atom;
  char letter = 0;
  Formula lhs;
  Formula rhs;
  std::size_t depth = 1;
  std::size_t size = 1;
  std::size_t hash = 0;
};

inline Connective Formula::connective() const noexcept { return node_->op; }
inline bool Formula::is(Connective op) const noexcept { return node_->op == op; }
inline bool Formula::is_binary() const noexcept {
  return node_->op != Connective::Atom && node_->op != Connective::Not;
}
inline std::size_t Formula::depth() const noexcept { return node_->depth; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::hash() const noexcept { return node_ ? node_->hash : 0; }

inline Formula Atom(char c) { return Formula::atom(c); }
inline Formula Not(Formula f) { return Formula::negation(std::move(f)); }
inline Formula And(Formula a, Formula b) {
  return Formula::binary(Connective::And, std::move(a), std::move(b));
}
inline Formula Or(Formula a, Formula b) {
  return Formula::binary(Connective::Or, std::move(a), std::move(b));
}
inline Formula Implies(Formula a, Formula b) {
  return Formula::binary(Connective::Implies, std::move(a), std::move(b));
}
inline Formula Iff(Formula a, Formula b) {
  return Formula::binary(Connective::Iff, std::move(a), std::move(b));
}

/// Parses the ASCII grammar: atoms `A`-`Z`, `~ & | -> <->`, parentheses.
/// Spaces are ignored. Throws MalformedFormula with the byte offset of the
/// first problem.
Formula parse_formula(std::string_view text);

/// Canonical rendering with the fewest parentheses that still parse back to
/// the same tree. No whitespace.
std::string render(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

}  // namespace ptutor::logic

template <>
struct std::hash<ptutor::logic::Formula> {
  std::size_t operator()(const ptutor::logic::Formula& f) const noexcept { return f.hash(); }
};
