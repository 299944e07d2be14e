#include "fixtures.hpp"

#include <map>

namespace fx {

using namespace hdml;

Hda square(bool filled) {
  HdaBuilder b;
  CellId q1 = b.add_cell("q0_1", 0);
  CellId q2s = b.add_cell("q0_2", 0);
  CellId q3 = b.add_cell("q0_3", 0);
  CellId q4 = b.add_cell("q0_4", 0);
  auto edge = [&](const char* name, CellId from, CellId to, const char* label) {
    CellId e = b.add_cell(name, 1);
    b.set_src(e, 1, from).set_tgt(e, 1, to).set_label(e, label);
    return e;
  };
  CellId a_low = edge("a_low", q1, q2s, "a");
  CellId b_right = edge("b_right", q2s, q3, "b");
  CellId b_left = edge("b_left", q1, q4, "b");
  CellId a_top = edge("a_top", q4, q3, "a");
  if (filled) {
    CellId sq = b.add_cell("q2", 2);
    b.set_src(sq, 1, b_left).set_tgt(sq, 1, b_right).set_src(sq, 2, a_low).set_tgt(sq, 2, a_top);
  }
  b.add_initial(q1).add_final(q3);
  return b.build();
}

Hda corrupted_square() {
  const Hda good = square(true);
  HdaBuilder b;
  for (CellId q : good.cells()) b.add_cell(good.name(q), good.dim(q));
  for (CellId q : good.cells()) {
    for (int i = 1; i <= good.dim(q); ++i) {
      b.set_src(q, i, good.s(q, i));
      CellId t = good.t(q, i);
      if (good.name(q) == "q2" && i == 2) t = good.at("a_low");
      b.set_tgt(q, i, t);
    }
    if (const auto& l = good.edge_label(q)) b.set_label(q, *l);
  }
  b.add_initial(good.at("q0_1")).add_final(good.at("q0_3"));
  return b.build();
}

Hda twin_squares(const std::vector<std::string>& props) {
  const Hda one = square(true);
  HdaBuilder b;
  for (const char* suffix : {"_x", "_y"}) {
    std::map<std::uint32_t, CellId> id;
    for (CellId q : one.cells()) id[q.value] = b.add_cell(one.name(q) + suffix, one.dim(q));
    for (CellId q : one.cells()) {
      for (int i = 1; i <= one.dim(q); ++i) {
        b.set_src(id[q.value], i, id[one.s(q, i).value]);
        b.set_tgt(id[q.value], i, id[one.t(q, i).value]);
      }
      if (const auto& l = one.edge_label(q)) b.set_label(id[q.value], *l);
      for (const auto& p : props) b.add_prop(id[q.value], p);
    }
  }
  return b.build();
}

Hda a_then_b_or_c() {
  KripkeStructure k;
  k.states = {"r", "x", "y", "z"};
  k.trans = {{"r", "a", "x"}, {"x", "b", "y"}, {"x", "c", "z"}};
  k.initial = {"r"};
  return kripke_to_hda(k);
}

Hda a_b_or_a_c() {
  KripkeStructure k;
  k.states = {"r", "x1", "x2", "y", "z"};
  k.trans = {{"r", "a", "x1"}, {"r", "a", "x2"}, {"x1", "b", "y"}, {"x2", "c", "z"}};
  k.initial = {"r"};
  return kripke_to_hda(k);
}

Hda doubled(const Hda& h, CellId root) {
  HdaBuilder b(h);
  std::vector<CellId> copy(h.size());
  for (CellId q : h.cells())
    copy[q.value] = q == root ? root : b.add_cell(h.name(q) + "'", h.dim(q));
  for (CellId q : h.cells()) {
    if (q == root) continue;
    for (int i = 1; i <= h.dim(q); ++i) {
      b.set_src(copy[q.value], i, copy[h.s(q, i).value]);
      b.set_tgt(copy[q.value], i, copy[h.t(q, i).value]);
    }
    if (const auto& l = h.edge_label(q)) b.set_label(copy[q.value], *l);
    for (const auto& p : h.valuation(q)) b.add_prop(copy[q.value], p);
  }
  return b.build();
}

namespace {

Formula gen(std::mt19937_64& rng, int budget, const FormulaGen& g) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (budget <= 1) {
    const std::size_t k = pick(g.props.size() + 2);
    if (k == g.props.size()) return Formula::bottom();
    if (k == g.props.size() + 1) return g.sugar ? top() : Formula::bottom();
    return Formula::prop(g.props[k]);
  }
  std::vector<int> ops{0, 1, 2};  // implies, during, after
  if (g.sugar) ops.insert(ops.end(), {3, 4, 5});
  if (g.labeled) ops.insert(ops.end(), {6, 7});
  if (g.untils) ops.insert(ops.end(), {8, 9});
  const int op = ops[pick(ops.size())];
  const auto& act = g.actions[pick(g.actions.size())];
  auto split = [&](auto make) {
    const int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(std::max(1, budget - 2))));
    return make(gen(rng, left, g), gen(rng, std::max(1, budget - 1 - left), g));
  };
  switch (op) {
    case 0: return split([](Formula a, Formula b) { return Formula::implies(a, b); });
    case 1: return Formula::during(gen(rng, budget - 1, g));
    case 2: return Formula::after(gen(rng, budget - 1, g));
    case 3: return neg(gen(rng, budget - 1, g));
    case 4: return split([](Formula a, Formula b) { return conj(a, b); });
    case 5: return split([](Formula a, Formula b) { return disj(a, b); });
    case 6: return Formula::during_l(act, gen(rng, budget - 1, g));
    case 7: return Formula::after_l(act, gen(rng, budget - 1, g));
    case 8: return split([](Formula a, Formula b) { return Formula::until_c(a, b); });
    default: return split([](Formula a, Formula b) { return Formula::until_l(a, b); });
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, int max_size, const FormulaGen& g) {
  return gen(rng, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_size))), g);
}

KripkeStructure random_kripke(std::mt19937_64& rng, int states, int transitions,
                              const std::vector<std::string>& actions, const std::vector<std::string>& props) {
  KripkeStructure k;
  for (int s = 0; s < states; ++s) {
    k.states.push_back("s" + std::to_string(s));
    for (const auto& p : props)
      if ((rng() & 1U) != 0) k.valuation[k.states.back()].push_back(p);
  }
  for (int t = 0; t < transitions; ++t)
    k.trans.push_back({k.states[rng() % k.states.size()], actions[rng() % actions.size()],
                       k.states[rng() % k.states.size()]});
  k.initial = {k.states.front()};
  return k;
}

Hda random_model(std::uint64_t seed, int max_dim, int budget_per_level, bool acyclic,
                 const std::vector<std::string>& props, const std::vector<std::string>& alphabet) {
  RandomHdaParams p;
  p.seed = seed;
  p.max_dim = max_dim;
  p.cells_per_level.assign(static_cast<std::size_t>(max_dim + 1), budget_per_level);
  p.props = props;
  p.alphabet = alphabet;
  p.allow_cycles = !acyclic;
  return generate_random(p);
}

TraceSpec random_trace(std::mt19937_64& rng, int length) {
  TraceSpec t;
  t.alphabet = {"a", "b", "c"};
  for (const auto& x : t.alphabet)
    for (const auto& y : t.alphabet)
      if (x < y && (rng() & 1U)) {
        t.independence.insert({x, y});
        t.independence.insert({y, x});
      }
  std::vector<std::string> word;
  for (int k = 0; k < length; ++k) {
    word.push_back(t.alphabet[rng() % t.alphabet.size()]);
    t.events.push_back("e" + std::to_string(k));
    t.lambda[t.events.back()] = word.back();
  }
  for (int i = 0; i < length; ++i)
    for (int j = i + 1; j < length; ++j)
      if (!t.independence.count({word[static_cast<std::size_t>(i)], word[static_cast<std::size_t>(j)]}))
        t.leq.emplace_back(t.events[static_cast<std::size_t>(i)], t.events[static_cast<std::size_t>(j)]);
  return t;
}

EventStructure random_event_structure(std::mt19937_64& rng, int events) {
  const auto n = static_cast<std::size_t>(events);
  for (;;) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      le[i][i] = true;
      for (std::size_t j = i + 1; j < n; ++j) le[i][j] = (rng() % 4) == 0;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (le[i][k] && le[k][j]) le[i][j] = true;
    std::vector<std::vector<bool>> cf(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!le[i][j] && (rng() % 5) == 0) cf[i][j] = cf[j][i] = true;
    // Inherit conflict upwards along the order.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (cf[i][j])
            for (std::size_t k = 0; k < n; ++k)
              if (le[j][k] && !cf[i][k]) {
                cf[i][k] = cf[k][i] = true;
                changed = true;
              }
    }
    // An event whose history is in conflict with itself never occurs; draw again.
    bool self = false;
    for (std::size_t i = 0; i < n; ++i) self = self || cf[i][i];
    if (self) continue;
    EventStructure es;
    for (std::size_t k = 0; k < n; ++k) es.events.push_back("e" + std::to_string(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (le[i][j]) es.leq.emplace(es.events[i], es.events[j]);
        if (cf[i][j]) es.conflict.emplace(es.events[i], es.events[j]);
      }
    return es;
  }
}

}  // namespace fx
