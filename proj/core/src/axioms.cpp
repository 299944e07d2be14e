#include "hdml/axioms.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "hdml/encodings.hpp"
#include "hdml/errors.hpp"
#include "hdml/semantics.hpp"

namespace hdml {

std::string_view to_string(SchemaKind k) {
  switch (k) {
    case SchemaKind::Tautology: return "tautology";
    case SchemaKind::Axiom: return "axiom";
    case SchemaKind::Theorem: return "theorem";
    case SchemaKind::Exercise: return "exercise";
    case SchemaKind::NonTheorem: return "non-theorem";
  }
  return "?";
}

Formula Schema::form(int i) const { return make(indexed() ? i : 0); }

namespace {

Formula phi() { return Formula::prop(std::string(kMetaPhi)); }
Formula psi() { return Formula::prop(std::string(kMetaPsi)); }
Formula S(Formula f) { return Formula::during(std::move(f)); }
Formula T(Formula f) { return Formula::after(std::move(f)); }
Formula BS(Formula f) { return box_during(std::move(f)); }
Formula BT(Formula f) { return box_after(std::move(f)); }
Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
Formula ff() { return Formula::bottom(); }
Formula tt() { return top(); }
Formula terminable(int i) { return nested(i, Modality::After, top()); }

Schema plain(std::string id, SchemaKind kind, int arity, Formula f) {
  return Schema{std::move(id), kind, arity, std::nullopt, [f](int) { return f; }};
}

Schema family(std::string id, SchemaKind kind, int arity, int min_i, std::function<Formula(int)> make) {
  return Schema{std::move(id), kind, arity, min_i, std::move(make)};
}

// Pairwise contradictory code literals over ceil(log2 k) reserved props.
std::vector<Formula> codes(int k) {
  int bits = 0;
  while ((1 << bits) < k) ++bits;
  std::vector<Formula> out;
  for (int c = 0; c < k; ++c) {
    std::vector<Formula> lits;
    for (int b = 0; b < bits; ++b) {
      Formula p = Formula::prop(std::string(kTerminablePrefix) + std::to_string(b));
      lits.push_back(((c >> b) & 1) != 0 ? p : neg(p));
    }
    out.push_back(conj_all(lits));
  }
  return out;
}

std::vector<Schema> build_catalog() {
  using K = SchemaKind;
  std::vector<Schema> c;
  c.push_back(plain("PT1", K::Tautology, 2, imp(phi(), imp(psi(), phi()))));
  c.push_back(plain("PT2", K::Tautology, 2, imp(imp(neg(phi()), neg(psi())), imp(psi(), phi()))));
  c.push_back(plain("PT3", K::Tautology, 2, imp(imp(imp(phi(), psi()), phi()), phi())));
  c.push_back(plain("A1", K::Axiom, 0, iff(S(ff()), ff())));
  c.push_back(plain("A1'", K::Axiom, 0, iff(T(ff()), ff())));
  c.push_back(plain("A2", K::Axiom, 2, iff(S(disj(phi(), psi())), disj(S(phi()), S(psi())))));
  c.push_back(plain("A2'", K::Axiom, 2, iff(T(disj(phi(), psi())), disj(T(phi()), T(psi())))));
  c.push_back(plain("A3", K::Axiom, 1, iff(BS(phi()), neg(S(neg(phi()))))));
  c.push_back(plain("A3'", K::Axiom, 1, iff(BT(phi()), neg(T(neg(phi()))))));
  c.push_back(family("A4", K::Axiom, 0, 1, [](int i) { return imp(at_least_terminable(i), terminable(i)); }));
  c.push_back(plain("A5", K::Axiom, 1, imp(terminable(2), imp(T(BT(phi())), BT(T(phi()))))));
  c.push_back(plain("A6", K::Axiom, 1, imp(S(BT(phi())), BT(S(phi())))));
  c.push_back(plain("A6'", K::Axiom, 1, imp(T(BS(phi())), BS(T(phi())))));
  c.push_back(family("A7", K::Axiom, 0, 0, [](int i) { return imp(S(terminable(i)), BS(terminable(i))); }));
  c.push_back(family("A7'", K::Axiom, 0, 0, [](int i) { return imp(T(terminable(i)), BT(terminable(i))); }));
  c.push_back(family("A8", K::Axiom, 0, 0, [](int i) { return imp(terminable(i), BS(T(terminable(i)))); }));
  c.push_back(family("A8'", K::Axiom, 0, 0, [](int i) { return imp(S(T(terminable(i))), terminable(i)); }));
  c.push_back(plain("A9", K::Axiom, 1, imp(S(S(T(phi()))), S(T(S(phi()))))));
  c.push_back(plain("A9'", K::Axiom, 1, imp(S(T(T(phi()))), T(S(T(phi()))))));
  return c;
}

Formula exercise_general(int i) {
  std::vector<Formula> parts;
  for (const auto& code : codes(i - 1)) parts.push_back(T(conj(code, BT(neg(phi())))));
  parts.push_back(T(T(phi())));
  return imp(conj_all(parts), terminable(i + 1));
}

std::vector<Schema> build_theorems() {
  using K = SchemaKind;
  const Formula p = phi();
  const Formula q = psi();
  std::vector<Schema> c;
  c.push_back(plain("T1", K::Theorem, 2, imp(BS(imp(p, q)), imp(BS(p), BS(q)))));
  c.push_back(plain("T2", K::Theorem, 2, imp(BT(imp(p, q)), imp(BT(p), BT(q)))));
  c.push_back(plain("T3", K::Theorem, 1, imp(terminable(2), neg(conj(T(BT(p)), T(BT(neg(p))))))));
  c.push_back(plain("T4", K::Theorem, 0, imp(T(BS(ff())), BS(ff()))));
  c.push_back(plain("T5", K::Theorem, 0, imp(S(tt()), BT(S(tt())))));
  c.push_back(plain("T6", K::Theorem, 1, imp(T(tt()), imp(S(BT(p)), T(S(p))))));
  c.push_back(plain("T7", K::Theorem, 1, imp(S(tt()), imp(T(BS(p)), S(T(p))))));
  c.push_back(plain("T8", K::Theorem, 0, BS(T(tt()))));
  c.push_back(plain("T9", K::Theorem, 0, imp(conj(S(tt()), T(tt())), T(S(tt())))));
  c.push_back(plain("T10", K::Theorem, 0, imp(T(tt()), imp(S(T(tt())), T(S(tt()))))));
  c.push_back(plain("T11", K::Theorem, 1, imp(S(conj(T(p), T(neg(p)))), disj(T(S(p)), T(S(neg(p)))))));
  c.push_back(plain("T12", K::Theorem, 1, imp(S(S(T(T(p)))), S(T(S(T(p)))))));
  c.push_back(plain("T13", K::Theorem, 1, imp(S(S(S(T(p)))), S(T(S(S(p)))))));
  c.push_back(plain("T14", K::Theorem, 1, imp(S(S(T(S(p)))), S(T(S(S(p)))))));
  c.push_back(plain("T15", K::Theorem, 1, imp(BS(BT(BS(p))), BS(BS(BT(p))))));
  c.push_back(plain("T16", K::Theorem, 1, imp(BT(BS(BT(p))), BS(BT(BT(p))))));
  c.push_back(plain("T17", K::Theorem, 1, imp(BT(BT(ff())), imp(T(p), BT(p)))));
  c.push_back(plain("T18", K::Theorem, 1, imp(conj(T(T(p)), T(BT(neg(p)))), terminable(3))));
  c.push_back(plain("EX", K::Exercise, 1,
                    imp(conj_all({T(conj(p, BT(neg(p)))), T(conj(neg(p), BT(neg(p)))), T(T(p))}),
                        terminable(4))));
  c.push_back(family("EXG", K::Exercise, 1, 2, exercise_general));
  return c;
}

std::vector<Schema> build_non_theorems() {
  using K = SchemaKind;
  const Formula p = phi();
  const Formula q = psi();
  std::vector<Schema> c;
  c.push_back(plain("NA-choice", K::NonTheorem, 1, imp(S(BS(p)), BS(S(p)))));
  c.push_back(plain("T1-diamond", K::NonTheorem, 2, imp(S(imp(p, q)), imp(S(p), S(q)))));
  c.push_back(plain("T2-diamond", K::NonTheorem, 2, imp(T(imp(p, q)), imp(T(p), T(q)))));
  c.push_back(plain("T12-converse", K::NonTheorem, 1, imp(S(T(S(T(p)))), S(S(T(T(p)))))));
  return c;
}

struct Instance {
  const Schema* schema;
  Formula formula;
};

std::vector<std::pair<Formula, Formula>> sample_pairs(const std::vector<Formula>& pool, const SuiteOptions& opts) {
  std::vector<std::pair<Formula, Formula>> out;
  const std::size_t n = pool.size();
  if (n == 0) return out;
  if (n * n <= opts.max_pairs) {
    for (const auto& a : pool)
      for (const auto& b : pool) out.emplace_back(a, b);
    return out;
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t k = 0; k < opts.max_pairs; ++k)
    out.emplace_back(pool[rng() % n], pool[rng() % n]);
  return out;
}

std::vector<Instance> expand(const std::vector<Schema>& schemas, const std::vector<Formula>& pool,
                             const SuiteOptions& opts) {
  const auto pairs = sample_pairs(pool, opts);
  std::vector<Instance> out;
  for (const auto& s : schemas) {
    const int lo = s.indexed() ? *s.min_index : 0;
    const int hi = s.indexed() ? std::max(lo, opts.i_max) : 0;
    for (int i = lo; i <= hi; ++i) {
      const std::optional<int> idx = s.indexed() ? std::optional<int>(i) : std::nullopt;
      if (s.arity == 0) {
        out.push_back({&s, instantiate(s, {}, idx)});
      } else if (s.arity == 1) {
        for (const auto& f : pool) out.push_back({&s, instantiate(s, {{std::string(kMetaPhi), f}}, idx)});
      } else {
        for (const auto& [a, b] : pairs)
          out.push_back({&s, instantiate(s, {{std::string(kMetaPhi), a}, {std::string(kMetaPsi), b}}, idx)});
      }
    }
  }
  return out;
}

bool all_cells(const CellSet& s) { return s.all(); }

void record(SuiteReport& r, const SuiteOptions& opts, std::string id, const Formula& f, std::size_t model,
            const CellSet& s) {
  if (r.failures.size() >= opts.max_failures) return;
  CellSet missing = ~s;
  const auto k = missing.find_first();
  r.failures.push_back({std::move(id), f, model, CellId{static_cast<std::uint32_t>(k == CellSet::npos ? 0 : k)}});
}

// Premise-valid-implies-conclusion-valid for one-premise rules.
using Rule = std::pair<std::string, std::function<std::pair<std::vector<Formula>, Formula>(const Formula&, const Formula&)>>;

void check_rules(SuiteReport& r, const std::vector<Rule>& rules, const std::vector<Hda>& models,
                 const std::vector<Formula>& pool, const SuiteOptions& opts) {
  auto pairs = sample_pairs(pool, opts);
  // Pairs whose implication is valid everywhere, so the rules really fire.
  for (std::size_t k = 0; k < pool.size(); ++k) {
    pairs.emplace_back(pool[k], disj(pool[k], pool[(k * 7 + 3) % pool.size()]));
    pairs.emplace_back(conj(pool[k], pool[(k * 5 + 1) % pool.size()]), pool[k]);
  }
  for (const auto& rule : rules) r.instances_per_schema[rule.first] += pairs.size();
  for (std::size_t m = 0; m < models.size(); ++m) {
    Checker ck{Model(models[m])};
    for (const auto& [name, rule] : rules) {
      for (const auto& [a, b] : pairs) {
        auto [premises, conclusion] = rule(a, b);
        ++r.checks;
        bool fires = std::all_of(premises.begin(), premises.end(),
                                 [&](const Formula& f) { return all_cells(ck.sat(f)); });
        if (!fires) continue;
        const CellSet& s = ck.sat(conclusion);
        if (!all_cells(s)) record(r, opts, name, conclusion, m, s);
      }
    }
  }
}

}  // namespace

const std::vector<Schema>& catalog() {
  static const std::vector<Schema> c = build_catalog();
  return c;
}

const std::vector<Schema>& theorem_catalog() {
  static const std::vector<Schema> c = build_theorems();
  return c;
}

const std::vector<Schema>& non_theorem_catalog() {
  static const std::vector<Schema> c = build_non_theorems();
  return c;
}

const Schema& find_schema(const std::string& id) {
  for (const auto* list : {&catalog(), &theorem_catalog(), &non_theorem_catalog()})
    for (const auto& s : *list)
      if (s.id == id) return s;
  throw SchemaError("unknown schema '" + id + "'");
}

Formula instantiate(const Schema& s, const std::map<std::string, Formula>& assignment, std::optional<int> i) {
  if (s.indexed()) {
    if (!i) throw SchemaError("schema " + s.id + " needs an index");
    if (*i < *s.min_index)
      throw SchemaError("schema " + s.id + " needs index >= " + std::to_string(*s.min_index));
  }
  const Formula tpl = s.form(i.value_or(0));
  const std::string metas[] = {std::string(kMetaPhi), std::string(kMetaPsi)};
  for (int k = 0; k < s.arity; ++k)
    if (!assignment.count(metas[k])) throw SchemaError("schema " + s.id + ": no formula for " + metas[k]);
  return substitute(tpl, assignment);
}

std::vector<Formula> formula_pool(int depth, const std::vector<std::string>& props) {
  if (props.size() != 2) throw SchemaError("formula_pool expects exactly two propositions");
  const Formula p = Formula::prop(props[0]);
  const Formula q = Formula::prop(props[1]);
  std::vector<Formula> level{ff(), tt(), p, q, neg(p), neg(q), conj(p, q), disj(p, q)};
  std::set<std::string> seen;
  std::vector<Formula> pool;
  auto add = [&](const Formula& f) {
    if (seen.insert(to_string(f)).second) pool.push_back(f);
  };
  for (const auto& f : level) add(f);
  for (int d = 1; d <= depth; ++d) {
    const std::vector<Formula> prev = pool;
    for (const auto& x : prev) {
      add(S(x));
      add(T(x));
      add(BS(x));
      add(BT(x));
    }
  }
  return pool;
}

std::vector<Hda> default_corpus(std::size_t count, std::uint64_t seed) {
  const std::vector<std::string> props{"p", "q", std::string(kTerminablePrefix) + "0",
                                       std::string(kTerminablePrefix) + "1"};
  std::vector<Hda> out;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    if (k % 25 == 24) {
      if ((k / 25) % 2 == 0) {
        // Full 4-cube with a random valuation.
        HdaBuilder b(hypercube({"e1", "e2", "e3", "e4"},
                               {{"e1", "a"}, {"e2", "b"}, {"e3", "a"}, {"e4", "b"}}));
        for (std::uint32_t c = 0; c < b.size(); ++c)
          for (const auto& p : props)
            if ((rng() & 1U) != 0) b.add_prop(CellId{c}, p);
        out.push_back(b.build());
        continue;
      }
      RandomHdaParams rp;
      rp.max_dim = 4;
      rp.cells_per_level = {24, 40, 30, 10, 2};
      rp.props = props;
      rp.seed = seed * 1000003 + k;
      rp.max_fragments = 8;
      out.push_back(generate_random(rp));
      continue;
    }
    RandomHdaParams rp;
    rp.max_dim = 1 + static_cast<int>(k % 3);
    rp.cells_per_level = {8, 12, 8, 3};
    rp.cells_per_level.resize(static_cast<std::size_t>(rp.max_dim + 1));
    rp.props = props;
    rp.seed = seed * 1000003 + k;
    rp.allow_cycles = k % 2 == 0;
    rp.max_fragments = 12;
    out.push_back(generate_random(rp));
  }
  return out;
}

namespace {

Hda rewire(const Hda& h, CellId target, int index, bool source, CellId replacement) {
  HdaBuilder b;
  for (CellId q : h.cells()) b.add_cell(h.name(q), h.dim(q));
  for (CellId q : h.cells()) {
    for (int i = 1; i <= h.dim(q); ++i) {
      CellId s = h.s(q, i);
      CellId t = h.t(q, i);
      if (q == target && i == index) (source ? s : t) = replacement;
      b.set_src(q, i, s);
      b.set_tgt(q, i, t);
    }
    if (const auto& l = h.edge_label(q)) b.set_label(q, *l);
    for (const auto& p : h.valuation(q)) b.add_prop(q, p);
  }
  for (CellId q : h.initial()) b.add_initial(q);
  for (CellId q : h.final_states()) b.add_final(q);
  return b.build();
}

}  // namespace

std::vector<Hda> mutation_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<Hda> out;
  std::mt19937_64 rng(seed);
  const auto base = default_corpus(std::max<std::size_t>(count, 25), seed + 17);
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    const Hda& h = base[attempt % base.size()];
    std::vector<CellId> high;
    for (CellId q : h.cells())
      if (h.dim(q) >= 2) high.push_back(q);
    if (high.empty()) continue;
    const CellId q = high[rng() % high.size()];
    const int n = h.dim(q);
    const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const bool source = (rng() & 1U) != 0;
    const auto& faces = h.level(n - 1);
    const CellId r = faces[rng() % faces.size()];
    if (r == (source ? h.s(q, i) : h.t(q, i))) continue;
    Hda m = rewire(h, q, i, source, r);
    if (!validate(m).ok()) out.push_back(std::move(m));
  }
  return out;
}

SuiteReport check_schemas(const std::vector<Schema>& schemas, const std::vector<Hda>& models,
                          const std::vector<Formula>& pool, const SuiteOptions& opts) {
  SuiteReport r;
  r.models = models.size();
  const auto instances = expand(schemas, pool, opts);
  r.instances = instances.size();
  for (const auto& in : instances) ++r.instances_per_schema[in.schema->id];
  for (std::size_t m = 0; m < models.size(); ++m) {
    Checker ck{Model(models[m])};
    for (const auto& in : instances) {
      ++r.checks;
      const CellSet& s = ck.sat(in.formula);
      if (!all_cells(s)) record(r, opts, in.schema->id, in.formula, m, s);
    }
  }
  return r;
}

SuiteReport soundness_suite(const std::vector<Hda>& models, const std::vector<Formula>& pool,
                            const SuiteOptions& opts) {
  SuiteReport r = check_schemas(catalog(), models, pool, opts);
  if (opts.check_rules) {
    const std::vector<Rule> rules{
        {"MP", [](const Formula& a, const Formula& b) {
           return std::pair{std::vector<Formula>{a, imp(a, b)}, b};
         }},
        {"D", [](const Formula& a, const Formula& b) {
           return std::pair{std::vector<Formula>{imp(a, b)}, imp(S(a), S(b))};
         }},
        {"D'", [](const Formula& a, const Formula& b) {
           return std::pair{std::vector<Formula>{imp(a, b)}, imp(T(a), T(b))};
         }},
    };
    check_rules(r, rules, models, pool, opts);
  }
  return r;
}

SuiteReport theorem_suite(const std::vector<Hda>& models, const std::vector<Formula>& pool,
                          const SuiteOptions& opts) {
  SuiteOptions o = opts;
  o.i_max = std::max(opts.i_max, 4);  // the exercise family is checked up to i = 4
  SuiteReport r = check_schemas(theorem_catalog(), models, pool, o);
  if (opts.check_rules) {
    const std::vector<Rule> rules{
        {"RS", [](const Formula& a, const Formula&) { return std::pair{std::vector<Formula>{a}, BS(a)}; }},
        {"RT", [](const Formula& a, const Formula&) { return std::pair{std::vector<Formula>{a}, BT(a)}; }},
    };
    check_rules(r, rules, models, pool, opts);
  }
  return r;
}

std::optional<SuiteFailure> find_counterexample(const Schema& s, const std::vector<Hda>& models,
                                                const std::vector<Formula>& pool, const SuiteOptions& opts) {
  const auto instances = expand({s}, pool, opts);
  for (std::size_t m = 0; m < models.size(); ++m) {
    Checker ck{Model(models[m])};
    for (const auto& in : instances) {
      const CellSet& set = ck.sat(in.formula);
      if (!set.all()) {
        const auto k = (~set).find_first();
        return SuiteFailure{s.id, in.formula, m, CellId{static_cast<std::uint32_t>(k)}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace hdml
