#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hdml {

enum class Op : std::uint8_t {
  Bottom,
  Prop,
  Implies,
  During,   // <s>
  After,    // <t>
  DuringL,  // <s a>
  AfterL,   // <t a>
  UntilC,
  UntilL,
};

// Immutable, structurally compared HDML formula. Copies share nodes.
class Formula {
 public:
  Formula();  // false

  static Formula bottom();
  static Formula prop(std::string name);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula during(Formula arg);
  static Formula after(Formula arg);
  static Formula during_l(std::string action, Formula arg);
  static Formula after_l(std::string action, Formula arg);
  static Formula until_c(Formula lhs, Formula rhs);
  static Formula until_l(Formula lhs, Formula rhs);

  Op op() const;
  // Proposition name for Prop, action symbol for labeled modalities.
  const std::string& name() const;
  // Operand of a modality, or left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& arg() const { return lhs(); }

  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Formula make(Op op, std::string name, const Formula* lhs, const Formula* rhs);
  std::shared_ptr<const Node> n_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Derived connectives. Each elaborates to core syntax:
// ~a = a -> false, true = ~false, a | b = ~a -> b, a & b = ~(a -> ~b).
Formula top();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula conj_all(const std::vector<Formula>& fs);  // true when empty
Formula disj_all(const std::vector<Formula>& fs);  // false when empty
Formula box_during(Formula f);
Formula box_after(Formula f);
Formula box_during_l(std::string action, Formula f);
Formula box_after_l(std::string action, Formula f);
Formula diamond(Formula f);  // <s><t>f
Formula box_k(Formula f);    // [s][t]f
Formula exists_until(Formula f, Formula g);
Formula ltrl_next(std::string action, Formula f);
Formula ltrl_until(Formula f, Formula g);

enum class Modality { During, After };
Formula nested(int i, Modality m, Formula f);

inline constexpr std::string_view kTerminablePrefix = "@ti_";
Formula at_least_terminable(int i, std::string_view prefix = kTerminablePrefix);

std::size_t size(const Formula& f);
std::vector<Formula> closure(const Formula& f);  // sorted, without duplicates
int conc_up(const Formula& f);
int conc_down(const Formula& f);
int modal_depth(const Formula& f);
bool is_basic(const Formula& f);
std::set<std::string> props_of(const Formula& f);
std::set<std::string> actions_of(const Formula& f);
Formula substitute(const Formula& f, const std::map<std::string, Formula>& by_prop);

// Canonical text with derived connectives recognised; parse() inverts it.
std::string to_string(const Formula& f);
// Core syntax only, every binary node parenthesised.
std::string to_core_string(const Formula& f);

struct Vocabulary {
  std::set<std::string> props;
  std::set<std::string> actions;
};

Formula parse(std::string_view text);
// Rejects propositions and actions outside the vocabulary. Names starting
// with '@' are reserved for generated propositions and always accepted.
Formula parse(std::string_view text, const Vocabulary& vocab);

}  // namespace hdml
