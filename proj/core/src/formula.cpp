#include "hdml/formula.hpp"

#include <algorithm>
#include <functional>

#include "hdml/errors.hpp"

namespace hdml {

struct Formula::Node {
  Op op = Op::Bottom;
  std::string name;
  Formula a{nullptr};
  Formula b{nullptr};
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool has_two_operands(Op op) {
  return op == Op::Implies || op == Op::UntilC || op == Op::UntilL;
}

bool has_operand(Op op) { return op != Op::Bottom && op != Op::Prop; }

}  // namespace

Formula Formula::make(Op op, std::string name, const Formula* lhs, const Formula* rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  std::size_t h = mix(static_cast<std::size_t>(op) + 1, std::hash<std::string>{}(n->name));
  if (lhs) {
    n->a = *lhs;
    h = mix(h, lhs->hash());
    n->size += lhs->size();
  }
  if (rhs) {
    n->b = *rhs;
    h = mix(h, rhs->hash());
    n->size += rhs->size();
  }
  n->hash = h;
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula::Formula() : Formula(bottom()) {}

Formula Formula::bottom() {
  static const Formula kBottom = make(Op::Bottom, "", nullptr, nullptr);
  return kBottom;
}

Formula Formula::prop(std::string name) {
  if (name.empty()) throw Error("empty proposition name");
  return make(Op::Prop, std::move(name), nullptr, nullptr);
}

Formula Formula::implies(Formula lhs, Formula rhs) { return make(Op::Implies, "", &lhs, &rhs); }
Formula Formula::during(Formula arg) { return make(Op::During, "", &arg, nullptr); }
Formula Formula::after(Formula arg) { return make(Op::After, "", &arg, nullptr); }

Formula Formula::during_l(std::string action, Formula arg) {
  if (action.empty()) throw Error("empty action symbol");
  return make(Op::DuringL, std::move(action), &arg, nullptr);
}

Formula Formula::after_l(std::string action, Formula arg) {
  if (action.empty()) throw Error("empty action symbol");
  return make(Op::AfterL, std::move(action), &arg, nullptr);
}

Formula Formula::until_c(Formula lhs, Formula rhs) { return make(Op::UntilC, "", &lhs, &rhs); }
Formula Formula::until_l(Formula lhs, Formula rhs) { return make(Op::UntilL, "", &lhs, &rhs); }

Op Formula::op() const { return n_->op; }
const std::string& Formula::name() const { return n_->name; }

const Formula& Formula::lhs() const {
  if (!has_operand(n_->op)) throw Error("formula has no operand");
  return n_->a;
}

const Formula& Formula::rhs() const {
  if (!has_two_operands(n_->op)) throw Error("formula has no second operand");
  return n_->b;
}

std::size_t Formula::hash() const { return n_->hash; }
std::size_t Formula::size() const { return n_->size; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.n_ == y.n_) return true;
  if (!x.n_ || !y.n_) return false;
  if (x.n_->hash != y.n_->hash || x.n_->size != y.n_->size || x.n_->op != y.n_->op ||
      x.n_->name != y.n_->name)
    return false;
  return x.n_->a == y.n_->a && x.n_->b == y.n_->b;
}

std::strong_ordering operator<=>(const Formula& x, const Formula& y) {
  if (x.n_ == y.n_) return std::strong_ordering::equal;
  if (!x.n_ || !y.n_) return x.n_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = x.n_->size <=> y.n_->size; c != 0) return c;
  if (auto c = x.n_->op <=> y.n_->op; c != 0) return c;
  if (auto c = x.n_->name.compare(y.n_->name); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = x.n_->a <=> y.n_->a; c != 0) return c;
  return x.n_->b <=> y.n_->b;
}

// ---------------------------------------------------------------- sugar

Formula top() {
  static const Formula kTop = neg(Formula::bottom());
  return kTop;
}

Formula neg(Formula f) { return Formula::implies(std::move(f), Formula::bottom()); }
Formula conj(Formula a, Formula b) { return neg(Formula::implies(std::move(a), neg(std::move(b)))); }
Formula disj(Formula a, Formula b) { return Formula::implies(neg(std::move(a)), std::move(b)); }
Formula iff(Formula a, Formula b) { return conj(Formula::implies(a, b), Formula::implies(b, a)); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = conj(acc, fs[k]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = disj(acc, fs[k]);
  return acc;
}

Formula box_during(Formula f) { return neg(Formula::during(neg(std::move(f)))); }
Formula box_after(Formula f) { return neg(Formula::after(neg(std::move(f)))); }
Formula box_during_l(std::string a, Formula f) {
  return neg(Formula::during_l(std::move(a), neg(std::move(f))));
}
Formula box_after_l(std::string a, Formula f) {
  return neg(Formula::after_l(std::move(a), neg(std::move(f))));
}
Formula diamond(Formula f) { return Formula::during(Formula::after(std::move(f))); }
Formula box_k(Formula f) { return box_during(box_after(std::move(f))); }

Formula exists_until(Formula f, Formula g) {
  Formula busy = Formula::after(top());
  return Formula::until_c(disj(std::move(f), busy), conj(std::move(g), neg(busy)));
}

Formula ltrl_next(std::string action, Formula f) {
  return Formula::during_l(action, Formula::after_l(action, std::move(f)));
}

Formula ltrl_until(Formula f, Formula g) {
  Formula busy = Formula::after(top());
  return Formula::until_l(disj(std::move(f), busy), conj(std::move(g), neg(busy)));
}

Formula nested(int i, Modality m, Formula f) {
  if (i < 0) throw Error("nesting depth must be non-negative");
  for (int k = 0; k < i; ++k)
    f = m == Modality::During ? Formula::during(std::move(f)) : Formula::after(std::move(f));
  return f;
}

Formula at_least_terminable(int i, std::string_view prefix) {
  if (i < 1) throw Error("at_least_terminable needs i >= 1");
  int bits = 0;
  while ((1 << bits) < i) ++bits;
  // Codes are emitted as 1, 0, 2, 3, ... so that i = 2 reads <t>p & <t>~p.
  std::vector<int> codes;
  if (i == 1) {
    codes.push_back(0);
  } else {
    codes = {1, 0};
    for (int c = 2; c < i; ++c) codes.push_back(c);
  }
  std::vector<Formula> parts;
  for (int code : codes) {
    std::vector<Formula> lits;
    for (int b = 0; b < bits; ++b) {
      Formula p = Formula::prop(std::string(prefix) + std::to_string(b));
      lits.push_back(((code >> b) & 1) ? p : neg(p));
    }
    parts.push_back(Formula::after(conj_all(lits)));
  }
  return conj_all(parts);
}

// ---------------------------------------------------------------- measures

std::size_t size(const Formula& f) { return f.size(); }

namespace {

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (has_operand(f.op())) collect(f.lhs(), out);
  if (has_two_operands(f.op())) collect(f.rhs(), out);
}

}  // namespace

std::vector<Formula> closure(const Formula& f) {
  std::set<Formula> s;
  collect(f, s);
  return {s.begin(), s.end()};
}

int conc_up(const Formula& f) {
  switch (f.op()) {
    case Op::Bottom:
    case Op::Prop: return 0;
    case Op::Implies:
    case Op::UntilC:
    case Op::UntilL: return std::max(conc_up(f.lhs()), conc_up(f.rhs()));
    case Op::During:
    case Op::DuringL: return 1 + conc_up(f.arg());
    case Op::After:
    case Op::AfterL: return std::max(0, conc_up(f.arg()) - 1);
  }
  return 0;
}

int conc_down(const Formula& f) {
  switch (f.op()) {
    case Op::Bottom:
    case Op::Prop: return 0;
    case Op::Implies:
    case Op::UntilC:
    case Op::UntilL: return std::max(conc_down(f.lhs()), conc_down(f.rhs()));
    case Op::After:
    case Op::AfterL: return 1 + conc_down(f.arg());
    case Op::During:
    case Op::DuringL: return std::max(0, conc_down(f.arg()) - 1);
  }
  return 0;
}

int modal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Bottom:
    case Op::Prop: return 0;
    case Op::Implies:
    case Op::UntilC:
    case Op::UntilL: return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
    default: return 1 + modal_depth(f.arg());
  }
}

bool is_basic(const Formula& f) {
  switch (f.op()) {
    case Op::Bottom:
    case Op::Prop: return true;
    case Op::Implies: return is_basic(f.lhs()) && is_basic(f.rhs());
    case Op::During:
    case Op::After: return is_basic(f.arg());
    default: return false;
  }
}

namespace {

template <typename Pick>
void gather(const Formula& f, std::set<std::string>& out, Pick pick) {
  pick(f, out);
  if (has_operand(f.op())) gather(f.lhs(), out, pick);
  if (has_two_operands(f.op())) gather(f.rhs(), out, pick);
}

}  // namespace

std::set<std::string> props_of(const Formula& f) {
  std::set<std::string> out;
  gather(f, out, [](const Formula& g, std::set<std::string>& o) {
    if (g.op() == Op::Prop) o.insert(g.name());
  });
  return out;
}

std::set<std::string> actions_of(const Formula& f) {
  std::set<std::string> out;
  gather(f, out, [](const Formula& g, std::set<std::string>& o) {
    if (g.op() == Op::DuringL || g.op() == Op::AfterL) o.insert(g.name());
  });
  return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& by_prop) {
  switch (f.op()) {
    case Op::Bottom: return f;
    case Op::Prop: {
      auto it = by_prop.find(f.name());
      return it == by_prop.end() ? f : it->second;
    }
    case Op::Implies: return Formula::implies(substitute(f.lhs(), by_prop), substitute(f.rhs(), by_prop));
    case Op::During: return Formula::during(substitute(f.arg(), by_prop));
    case Op::After: return Formula::after(substitute(f.arg(), by_prop));
    case Op::DuringL: return Formula::during_l(f.name(), substitute(f.arg(), by_prop));
    case Op::AfterL: return Formula::after_l(f.name(), substitute(f.arg(), by_prop));
    case Op::UntilC: return Formula::until_c(substitute(f.lhs(), by_prop), substitute(f.rhs(), by_prop));
    case Op::UntilL: return Formula::until_l(substitute(f.lhs(), by_prop), substitute(f.rhs(), by_prop));
  }
  return f;
}

// ---------------------------------------------------------------- printing

namespace {

// Binding strength used by both the parser and the printer.
enum Level : int { kImplies = 0, kUntil = 1, kOr = 2, kAnd = 3, kPrefix = 4, kAtom = 5 };

bool is_neg(const Formula& f) { return f.op() == Op::Implies && f.rhs().op() == Op::Bottom; }

void print(const Formula& f, int min_level, std::string& out);

void emit(int level, int min_level, std::string& out, const std::function<void(std::string&)>& body) {
  if (level < min_level) {
    out.push_back('(');
    body(out);
    out.push_back(')');
  } else {
    body(out);
  }
}

std::string modality(Op op, const std::string& action, bool box) {
  const bool start = op == Op::During || op == Op::DuringL;
  std::string s(1, box ? '[' : '<');
  s.push_back(start ? 's' : 't');
  if (!action.empty()) s += " " + action;
  s.push_back(box ? ']' : '>');
  return s;
}

void print(const Formula& f, int min_level, std::string& out) {
  switch (f.op()) {
    case Op::Bottom: out += "false"; return;
    case Op::Prop: out += f.name(); return;
    case Op::During:
    case Op::After:
    case Op::DuringL:
    case Op::AfterL:
      emit(kPrefix, min_level, out, [&](std::string& o) {
        o += modality(f.op(), f.name(), false);
        print(f.arg(), kPrefix, o);
      });
      return;
    case Op::UntilC:
    case Op::UntilL:
      emit(kUntil, min_level, out, [&](std::string& o) {
        print(f.lhs(), kOr, o);
        o += f.op() == Op::UntilC ? " U_C " : " U_L ";
        print(f.rhs(), kUntil, o);
      });
      return;
    case Op::Implies: break;
  }

  const Formula& a = f.lhs();
  const Formula& b = f.rhs();
  if (b.op() == Op::Bottom) {
    if (a.op() == Op::Bottom) {
      out += "true";
      return;
    }
    if (a.op() == Op::Implies && is_neg(a.rhs())) {
      emit(kAnd, min_level, out, [&](std::string& o) {
        print(a.lhs(), kAnd, o);
        o += " & ";
        print(a.rhs().lhs(), kPrefix, o);
      });
      return;
    }
    const bool modal = a.op() == Op::During || a.op() == Op::After || a.op() == Op::DuringL ||
                       a.op() == Op::AfterL;
    if (modal && is_neg(a.arg())) {
      emit(kPrefix, min_level, out, [&](std::string& o) {
        o += modality(a.op(), a.name(), true);
        print(a.arg().lhs(), kPrefix, o);
      });
      return;
    }
    emit(kPrefix, min_level, out, [&](std::string& o) {
      o += "~";
      print(a, kPrefix, o);
    });
    return;
  }
  if (is_neg(a)) {
    if (a.lhs().op() == Op::Bottom) {
      emit(kImplies, min_level, out, [&](std::string& o) {
        o += "true -> ";
        print(b, kImplies, o);
      });
      return;
    }
    emit(kOr, min_level, out, [&](std::string& o) {
      print(a.lhs(), kOr, o);
      o += " | ";
      print(b, kAnd, o);
    });
    return;
  }
  emit(kImplies, min_level, out, [&](std::string& o) {
    print(a, kUntil, o);
    o += " -> ";
    print(b, kImplies, o);
  });
}

void print_core(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Bottom: out += "false"; return;
    case Op::Prop: out += f.name(); return;
    case Op::During:
    case Op::After:
    case Op::DuringL:
    case Op::AfterL:
      out += modality(f.op(), f.name(), false);
      print_core(f.arg(), out);
      return;
    case Op::Implies:
    case Op::UntilC:
    case Op::UntilL:
      out.push_back('(');
      print_core(f.lhs(), out);
      out += f.op() == Op::Implies ? " -> " : f.op() == Op::UntilC ? " U_C " : " U_L ";
      print_core(f.rhs(), out);
      out.push_back(')');
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, kImplies, out);
  return out;
}

std::string to_core_string(const Formula& f) {
  std::string out;
  print_core(f, out);
  return out;
}

}  // namespace hdml
