#include "hdml/filtration.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "hdml/encodings.hpp"
#include "hdml/errors.hpp"

namespace hdml {

// ---------------------------------------------------------------- filtrate

FiltrationResult filtrate(const Model& m, const Formula& phi) {
  const Hda& h = m.hda();
  FiltrationResult out;
  out.closure_used = closure(phi);
  Checker checker(m);
  std::vector<const CellSet*> truth;
  for (const auto& psi : out.closure_used) truth.push_back(&checker.sat(psi));

  // Classes are numbered per level; signature = truth vector followed by
  // the class ids of every s_i and t_i face, in that order.
  std::vector<int> klass(h.size(), -1);
  std::vector<std::vector<std::vector<CellId>>> members(static_cast<std::size_t>(h.max_dim() + 1));
  for (int n = 0; n <= h.max_dim(); ++n) {
    std::map<std::vector<int>, int> ids;
    for (CellId q : h.level(n)) {
      std::vector<int> sig;
      sig.reserve(truth.size() + 2 * static_cast<std::size_t>(n));
      for (const auto* s : truth) sig.push_back(s->test(q.value) ? 1 : 0);
      for (int i = 1; i <= n; ++i) sig.push_back(klass[h.s(q, i).value]);
      for (int i = 1; i <= n; ++i) sig.push_back(klass[h.t(q, i).value]);
      auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      if (fresh) members[static_cast<std::size_t>(n)].emplace_back();
      klass[q.value] = it->second;
      members[static_cast<std::size_t>(n)][static_cast<std::size_t>(it->second)].push_back(q);
    }
  }

  const std::set<std::string> relevant = props_of(phi);
  HdaBuilder b;
  std::vector<std::vector<CellId>> qcell(members.size());
  std::vector<std::vector<CellId>> rep(members.size());
  for (std::size_t n = 0; n < members.size(); ++n) {
    for (const auto& group : members[n]) {
      CellId r = *std::min_element(group.begin(), group.end(), [&](CellId a, CellId c) {
        return h.name(a) < h.name(c);
      });
      rep[n].push_back(r);
      CellId id = b.add_cell(h.name(r), static_cast<int>(n));
      qcell[n].push_back(id);
      for (const auto& p : h.valuation(r))
        if (relevant.count(p)) b.add_prop(id, p);
    }
  }
  auto image = [&](CellId q) {
    return qcell[static_cast<std::size_t>(h.dim(q))][static_cast<std::size_t>(klass[q.value])];
  };
  for (std::size_t n = 0; n < members.size(); ++n) {
    for (std::size_t k = 0; k < members[n].size(); ++k) {
      CellId r = rep[n][k];
      CellId id = qcell[n][k];
      for (int i = 1; i <= static_cast<int>(n); ++i) {
        b.set_src(id, i, image(h.s(r, i)));
        b.set_tgt(id, i, image(h.t(r, i)));
      }
      if (n != 1) continue;
      std::set<std::string> labels;
      bool unlabeled = false;
      for (CellId e : members[n][k]) {
        if (const auto& l = h.edge_label(e)) labels.insert(*l);
        else unlabeled = true;
      }
      if (labels.size() == 1 && !unlabeled) {
        b.set_label(id, *labels.begin());
      } else if (!labels.empty()) {
        out.warnings.push_back("class of edge '" + h.name(r) +
                               "' mixes labels; the quotient edge is left unlabeled");
      }
    }
  }
  for (CellId q : h.initial()) b.add_initial(image(q));
  for (CellId q : h.final_states()) b.add_final(image(q));

  out.quotient = b.build();
  out.class_of.resize(h.size());
  for (CellId q : h.cells()) out.class_of[q.value] = image(q);
  return out;
}

FiltrationLemmaReport check_filtration_lemma(const Model& m, const FiltrationResult& f) {
  FiltrationLemmaReport report;
  Checker source(m);
  Model qm(f.quotient);
  Checker target(qm);
  for (const auto& psi : f.closure_used) {
    const CellSet& a = source.sat(psi);
    const CellSet& b = target.sat(psi);
    for (CellId q : m.hda().cells()) {
      if (a.test(q.value) != b.test(f[q].value))
        report.mismatches.push_back(FiltrationMismatch{psi, q, a.test(q.value)});
    }
  }
  return report;
}

FiltrationLemmaReport check_filtration_lemma(const Model& m, const Formula& phi) {
  return check_filtration_lemma(m, filtrate(m, phi));
}

// ---------------------------------------------------------------- bounds

BigInt concurrency_count(int n) {
  if (n < 0) throw Error("dimension must be non-negative");
  BigInt total = 0;
  BigInt falling = 1;  // n!/(n-k)!
  BigInt pow2 = 1;
  for (int k = 0; k <= n; ++k) {
    total += pow2 * falling;
    falling *= (n - k);
    pow2 *= 2;
  }
  return total;
}

SizeBound size_bound(int n, int phi_size) {
  if (phi_size < 1) throw Error("formula size must be positive");
  SizeBound sb;
  sb.n = n;
  sb.phi_size = phi_size;
  sb.N = concurrency_count(n);
  sb.exponent = sb.N * phi_size;
  if (sb.exponent <= kMaxMaterialisedBits) {
    BigInt one = 1;
    sb.bound = one << static_cast<unsigned>(sb.exponent);
  }
  return sb;
}

BigInt small_model_bound(int phi_size) {
  BigInt total = 0;
  for (int n = 0; n <= phi_size; ++n) {
    SizeBound sb = size_bound(n, phi_size);
    if (!sb.bound) throw BudgetError("small model bound exceeds the materialisation limit");
    total += *sb.bound;
  }
  return total;
}

// ---------------------------------------------------------------- bounded search

namespace {

using Clock = std::chrono::steady_clock;

Hda two_state_shape(const std::vector<std::string>& actions, bool loop) {
  HdaBuilder b;
  CellId x = b.add_cell("v0", 0);
  CellId y = loop ? x : b.add_cell("v1", 0);
  CellId e = b.add_cell("e0", 1);
  b.set_src(e, 1, x).set_tgt(e, 1, y).set_label(e, actions.front());
  b.add_initial(x);
  return b.build();
}

std::vector<Hda> candidate_shapes(const std::vector<std::string>& actions, int dim_cap,
                                  std::size_t max_cells) {
  std::vector<Hda> shapes;
  auto keep = [&](Hda h) {
    if (h.size() <= max_cells) shapes.push_back(std::move(h));
  };
  HdaBuilder single;
  single.add_initial(single.add_cell("v0", 0));
  keep(single.build());
  if (dim_cap >= 1) {
    keep(two_state_shape(actions, false));
    keep(two_state_shape(actions, true));
  }
  for (int d = 1; d <= dim_cap; ++d) {
    std::vector<std::string> events;
    std::map<std::string, std::string> lambda;
    for (int k = 0; k < d; ++k) {
      events.push_back("e" + std::to_string(k));
      lambda[events.back()] = actions[static_cast<std::size_t>(k) % actions.size()];
    }
    keep(hypercube(events, lambda));
  }
  if (dim_cap >= 1) {
    // Hollow square: the cube 3^{e0,e1} without its interior.
    std::map<std::string, std::string> lambda{{"e0", actions.front()}, {"e1", actions.back()}};
    keep(truncate_above(hypercube({"e0", "e1"}, lambda), 1));
  }
  for (std::uint64_t seed = 1; seed <= 64 && dim_cap >= 1; ++seed) {
    RandomHdaParams p;
    p.max_dim = dim_cap;
    p.cells_per_level.assign(static_cast<std::size_t>(dim_cap + 1), 0);
    const int per = static_cast<int>(std::max<std::size_t>(2, max_cells / static_cast<std::size_t>(dim_cap + 1)));
    for (auto& c : p.cells_per_level) c = per;
    p.alphabet = actions;
    p.props = {};
    p.seed = seed;
    p.max_fragments = 4;
    keep(generate_random(p));
  }
  return shapes;
}

Hda with_valuation(const Hda& shape, const std::vector<std::string>& props,
                   const std::vector<bool>& bits) {
  HdaBuilder b(shape);
  std::size_t k = 0;
  for (CellId q : shape.cells())
    for (const auto& p : props)
      if (bits[k++]) b.add_prop(q, p);
  return b.build();
}

}  // namespace

SatResult decide_sat_bounded(const Formula& phi, const SatBudget& budget) {
  const auto deadline = Clock::now() + budget.time;
  const auto prop_set = props_of(phi);
  std::vector<std::string> props(prop_set.begin(), prop_set.end());
  auto act = actions_of(phi);
  std::vector<std::string> actions(act.begin(), act.end());
  if (actions.empty()) actions = {"a", "b"};
  const int dim_cap = std::min(budget.max_dim, std::max(0, conc_up(phi) + conc_down(phi)));

  NoModelWithinBudget none;
  auto out_of_budget = [&]() {
    return Clock::now() > deadline || none.models_explored >= budget.max_models;
  };
  std::mt19937_64 rng(0x5eed);

  for (const Hda& shape : candidate_shapes(actions, dim_cap, budget.max_cells)) {
    const std::size_t slots = shape.size() * props.size();
    const bool exhaustive = slots <= 12;
    const std::size_t rounds = exhaustive ? (std::size_t{1} << slots) : 256;
    for (std::size_t r = 0; r < rounds; ++r) {
      if (out_of_budget()) {
        none.budget_exhausted = true;
        none.reason = "budget exhausted after " + std::to_string(none.models_explored) + " models";
        return none;
      }
      std::vector<bool> bits(slots);
      for (std::size_t k = 0; k < slots; ++k) bits[k] = exhaustive ? ((r >> k) & 1U) != 0 : (rng() & 1U) != 0;
      Hda candidate = with_valuation(shape, props, bits);
      ++none.models_explored;
      Model model(candidate);
      Checker checker(model);
      const CellSet& s = checker.sat(phi);
      if (auto k = s.find_first(); k != CellSet::npos)
        return SatWitness{candidate, CellId{static_cast<std::uint32_t>(k)}};
    }
  }
  none.reason = "no witness among " + std::to_string(none.models_explored) +
                " candidate models within the size and dimension limits";
  return none;
}

// ---------------------------------------------------------------- compactness

bool CompactnessReport::ok() const {
  return beyond.empty() &&
         std::all_of(witness.begin(), witness.end(), [](const auto& w) { return w.has_value(); });
}

CompactnessReport compactness_demo(int m) {
  if (m < 0) throw Error("dimension must be non-negative");
  std::vector<std::string> events;
  std::map<std::string, std::string> lambda;
  for (int k = 1; k <= m; ++k) {
    events.push_back("e" + std::to_string(k));
    lambda[events.back()] = "a" + std::to_string(k);
  }
  CompactnessReport r;
  r.m = m;
  r.cube = hypercube(events, lambda);
  Model model(r.cube);
  Checker checker(model);
  for (int i = 0; i <= m; ++i) {
    const CellSet& s = checker.sat(nested(i, Modality::After, top()));
    auto k = s.find_first();
    r.witness.push_back(k == CellSet::npos ? std::nullopt
                                           : std::optional<CellId>(CellId{static_cast<std::uint32_t>(k)}));
  }
  r.beyond = to_cells(checker.sat(nested(m + 1, Modality::After, top())));
  return r;
}

}  // namespace hdml
