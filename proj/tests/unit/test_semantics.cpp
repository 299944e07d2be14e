#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "hdml/errors.hpp"
#include "hdml/formula.hpp"
#include "hdml/semantics.hpp"
#include "oracles.hpp"

using namespace hdml;

namespace {

bool subset(const std::vector<CellId>& a, const std::vector<CellId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// The two-route shape: the hollow square where q holds along the a route
// only and p marks the top corner.
Hda two_routes() {
  HdaBuilder b(fx::hollow_square());
  const Hda base = fx::hollow_square();
  for (const char* c : {"q0_1", "a_low", "q0_2", "b_right"}) b.add_prop(base.at(c), "q");
  b.add_prop(base.at("q0_3"), "p");
  return b.build();
}

std::vector<Hda> small_acyclic_models(std::size_t want) {
  std::vector<Hda> out;
  for (std::uint64_t seed = 1; out.size() < want && seed < 20 * want; ++seed) {
    Hda h = fx::random_model(seed, 2, 4, true);
    if (h.size() <= 12 && oracle::is_acyclic(h)) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

TEST_CASE("labeled modalities see the interior of the square") {
  const Formula f = parse("<s a><s b> true");
  CHECK(satisfies(Model(fx::square()), fx::square().at("q0_1"), f));
  CHECK_FALSE(satisfies(Model(fx::hollow_square()), fx::hollow_square().at("q0_1"), f));
  CHECK(satisfies(Model(fx::square()), fx::square().at("q0_1"), parse("<s b><s a> true")));
  CHECK_FALSE(satisfies(Model(fx::square()), fx::square().at("q0_1"), parse("<s a><s a> true")));
}

TEST_CASE("states cannot terminate anything") {
  std::mt19937_64 rng(2);
  const Hda h = fx::square();
  Model m(h);
  for (int k = 0; k < 50; ++k) {
    const Formula phi = fx::random_formula(rng, 6);
    for (CellId q : h.level(0)) {
      CHECK(satisfies(m, q, box_after(phi)));
      CHECK_FALSE(satisfies(m, q, Formula::after(phi)));
    }
  }
}

TEST_CASE("satisfaction sets and validity") {
  const Hda h = fx::square();
  Model m(h);
  CHECK(sat_set(m, top()) == h.cells());
  CHECK(sat_set(m, Formula::bottom()).empty());
  CHECK(sat_set(m, parse("<t><t> true")) == std::vector<CellId>{h.at("q2")});
  CHECK(valid_on(m, parse("[s] true")));
  CHECK_FALSE(valid_on(m, parse("[s][s] false")));
  CHECK_FALSE(satisfies(m, h.at("q0_1"), parse("[s][s] false")));
  CHECK(valid_on(Model(fx::hollow_square()), parse("[s][s] false")));
}

TEST_CASE("errors for unknown cells and missing labels") {
  Model m(fx::square());
  CHECK_THROWS_AS((void)satisfies(m, CellId{999}, top()), UnknownCellError);
  HdaBuilder b;
  CellId x = b.add_cell("x", 0);
  CellId y = b.add_cell("y", 0);
  CellId e = b.add_cell("e", 1);
  b.set_src(e, 1, x).set_tgt(e, 1, y);
  Model un(b.build());
  CHECK(satisfies(un, x, parse("<s> true")));
  CHECK_THROWS_AS((void)satisfies(un, x, parse("<s a> true")), MissingLabelError);
}

TEST_CASE("CTL-style until") {
  const Hda h = fx::square();
  Model m(h);
  const Formula stuck = parse("[s] false & [t] false");
  CHECK(sat_set(m, stuck) == std::vector<CellId>{h.at("q0_3")});
  CHECK(satisfies(m, h.at("q0_1"), Formula::until_c(top(), stuck)));
  CHECK(oracle::sat(h, h.at("q0_1"), Formula::until_c(top(), stuck)));
  // The empty path: g alone suffices.
  for (CellId q : h.cells()) CHECK(satisfies(m, q, Formula::until_c(Formula::bottom(), top())));
  // f = false, g only at one cell.
  HdaBuilder b(h);
  b.add_prop(h.at("a_top"), "p");
  Model mp(b.build());
  CHECK(eval_untilC(mp, Formula::bottom(), Formula::prop("p")) == std::vector<CellId>{h.at("a_top")});
}

TEST_CASE("LTL-style until quantifies over every route") {
  const Hda h = two_routes();
  Model m(h);
  const CellId q0 = h.at("q0_1");
  const Formula q = Formula::prop("q");
  const Formula p = Formula::prop("p");
  CHECK_FALSE(satisfies(m, q0, Formula::until_l(q, p)));
  CHECK(satisfies(m, q0, Formula::until_c(q, p)));
  CHECK(oracle::sat(h, q0, Formula::until_l(q, p)) == false);
  CHECK(oracle::sat(h, q0, Formula::until_c(q, p)) == true);
  // When g holds at the start nothing else is needed.
  CHECK(satisfies(m, h.at("q0_3"), Formula::until_l(Formula::bottom(), p)));
}

TEST_CASE("box and diamond are dual on random models") {
  std::mt19937_64 rng(17);
  fx::FormulaGen g;
  g.labeled = true;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Hda h = fx::random_model(seed, 3, 6, false);
    Model m(h);
    Checker c(m);
    for (int k = 0; k < 10; ++k) {
      const Formula phi = fx::random_formula(rng, 6, g);
      for (CellId q : h.cells()) {
        CHECK(c.satisfies(q, box_during(phi)) == !c.satisfies(q, Formula::during(neg(phi))));
        CHECK(c.satisfies(q, box_after(phi)) == !c.satisfies(q, Formula::after(neg(phi))));
        CHECK(c.satisfies(q, box_during_l("a", phi)) == !c.satisfies(q, Formula::during_l("a", neg(phi))));
      }
    }
  }
}

TEST_CASE("fixpoint engine matches path enumeration on small acyclic models") {
  const auto models = small_acyclic_models(60);
  REQUIRE(models.size() >= 30);
  std::mt19937_64 rng(23);
  fx::FormulaGen g;
  g.labeled = true;
  g.untils = true;
  std::size_t compared = 0;
  for (const auto& h : models) {
    Model m(h);
    Checker c(m);
    for (int k = 0; k < 25; ++k) {
      const Formula phi = fx::random_formula(rng, 9, g);
      for (CellId q : h.cells()) {
        INFO(to_string(phi));
        CHECK(c.satisfies(q, phi) == oracle::sat(h, q, phi));
        ++compared;
      }
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("untils are monotone in both arguments") {
  std::mt19937_64 rng(29);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Hda h = fx::random_model(seed, 2, 6, false);
    Model m(h);
    for (int k = 0; k < 10; ++k) {
      const Formula f = fx::random_formula(rng, 5);
      const Formula g = fx::random_formula(rng, 5);
      const Formula f2 = disj(f, fx::random_formula(rng, 4));
      const Formula g2 = disj(g, fx::random_formula(rng, 4));
      CHECK(subset(eval_untilC(m, f, g), eval_untilC(m, f2, g2)));
      CHECK(subset(eval_untilL(m, f, g), eval_untilL(m, f2, g2)));
      CHECK(subset(eval_untilL(m, f, g), eval_untilC(m, f, g)));
    }
  }
}

TEST_CASE("unlabeled during is the disjunction of labeled ones") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Hda h = fx::random_model(seed, 3, 6, false);
    Model m(h);
    Checker c(m);
    const auto acts = h.actions();
    for (int k = 0; k < 10; ++k) {
      const Formula phi = fx::random_formula(rng, 5);
      std::vector<Formula> ds, ts;
      for (const auto& a : acts) {
        ds.push_back(Formula::during_l(a, phi));
        ts.push_back(Formula::after_l(a, phi));
      }
      CHECK(c.sat(Formula::during(phi)) == c.sat(disj_all(ds)));
      CHECK(c.sat(Formula::after(phi)) == c.sat(disj_all(ts)));
    }
  }
}

TEST_CASE("truncating above the concurrency degree keeps satisfaction") {
  std::mt19937_64 rng(37);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Hda h = fx::random_model(seed, 3, 6, false);
    Model m(h);
    Checker c(m);
    for (int k = 0; k < 10; ++k) {
      const Formula phi = fx::random_formula(rng, 7);
      for (CellId q : h.cells()) {
        const Hda cut = truncate_above(h, conc_up(phi) + h.dim(q));
        const CellId q2 = cut.at(h.name(q));
        CHECK(c.satisfies(q, phi) == satisfies(Model(cut), q2, phi));
      }
    }
  }
}

TEST_CASE("checker memoises subformulas") {
  Model m(fx::square());
  Checker c(m);
  (void)c.sat(parse("<s>(p -> <t> q)"));
  const auto n = c.memo_size();
  CHECK(n >= 5);
  (void)c.sat(parse("<t> q"));
  CHECK(c.memo_size() == n);
}
