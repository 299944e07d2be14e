#include <doctest.h>

#include <algorithm>
#include <functional>

#include "fixtures.hpp"
#include "hdml/encodings.hpp"
#include "hdml/errors.hpp"
#include "hdml/hda.hpp"
#include "oracles.hpp"

using namespace hdml;

namespace {

bool has_kind(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == k; });
}

// Checks all four face-map commutations for every cell by brute force.
bool laws_hold(const Hda& h) {
  for (CellId q : h.cells()) {
    const int n = h.dim(q);
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i)
        for (bool alpha : {true, false})
          for (bool beta : {true, false}) {
            auto face = [&](bool src, CellId c, int k) { return src ? h.s(c, k) : h.t(c, k); };
            if (face(alpha, face(beta, q, j), i) != face(beta, face(alpha, q, i), j - 1)) return false;
          }
  }
  return true;
}

// Labels of event j reached through every admissible chain of source maps.
std::set<std::string> event_labels(const Hda& h, CellId q, int j) {
  std::set<std::string> out;
  std::function<void(CellId, int)> go = [&](CellId c, int idx) {
    if (h.dim(c) == 1) {
      out.insert(*h.edge_label(c));
      return;
    }
    for (int i = 1; i <= h.dim(c); ++i)
      if (i != idx) go(h.s(c, i), i < idx ? idx - 1 : idx);
  };
  go(q, j);
  return out;
}

}  // namespace

TEST_CASE("filled square validates and has the expected shape") {
  const Hda h = fx::square();
  CHECK(validate(h).ok());
  CHECK(h.size() == 9);
  CHECK(h.level(0).size() == 4);
  CHECK(h.level(1).size() == 4);
  CHECK(h.level(2).size() == 1);
  // t1(s2(q2)) = s1(t1(q2)) = q0_2
  const CellId q2 = h.at("q2");
  CHECK(h.t(h.s(q2, 2), 1) == h.at("q0_2"));
  CHECK(h.s(h.t(q2, 1), 1) == h.at("q0_2"));
}

TEST_CASE("single state validates") {
  HdaBuilder b;
  b.add_cell("only", 0);
  CHECK(validate(b.build()).ok());
}

TEST_CASE("empty HDA is accepted") { CHECK(validate(Hda{}).ok()); }

TEST_CASE("redirected target map breaks a cubical law at the square") {
  const Hda h = fx::corrupted_square();
  const auto r = validate(h);
  REQUIRE_FALSE(r.ok());
  CHECK(has_kind(r, ViolationKind::CubicalLaw));
  bool cites_square = false;
  for (const auto& v : r.violations)
    if (v.kind == ViolationKind::CubicalLaw)
      cites_square = cites_square || std::count(v.cells.begin(), v.cells.end(), h.at("q2")) > 0;
  CHECK(cites_square);
  CHECK_FALSE(laws_hold(h));
}

TEST_CASE("validate reports each kind of structural problem") {
  SUBCASE("missing map") {
    HdaBuilder b;
    CellId x = b.add_cell("x", 0);
    CellId e = b.add_cell("e", 1);
    b.set_src(e, 1, x);
    CHECK(has_kind(validate(b.build()), ViolationKind::MissingMap));
  }
  SUBCASE("map into the wrong dimension") {
    HdaBuilder b;
    CellId x = b.add_cell("x", 0);
    CellId e = b.add_cell("e", 1);
    CellId f = b.add_cell("f", 1);
    b.set_src(e, 1, x).set_tgt(e, 1, f).set_src(f, 1, x).set_tgt(f, 1, x);
    CHECK(has_kind(validate(b.build()), ViolationKind::MapDimension));
  }
  SUBCASE("label on a state") {
    HdaBuilder b;
    CellId x = b.add_cell("x", 0);
    b.set_label(x, "a");
    CHECK(has_kind(validate(b.build()), ViolationKind::LabelPlacement));
  }
  SUBCASE("opposite sides labeled differently") {
    Hda h = fx::square();
    HdaBuilder b(h);
    b.set_label(h.at("a_top"), "c");
    CHECK(has_kind(validate(b.build()), ViolationKind::LabelCoherence));
  }
  SUBCASE("initial cell that is not a state") {
    Hda h = fx::square();
    HdaBuilder b(h);
    b.add_initial(h.at("a_low"));
    CHECK(has_kind(validate(b.build()), ViolationKind::InitialFinal));
  }
  SUBCASE("duplicate names") {
    HdaBuilder b;
    b.add_cell("x", 0);
    b.add_cell("x", 0);
    CHECK(has_kind(validate(b.build()), ViolationKind::Structure));
  }
}

TEST_CASE("unknown cells are reported with a distinct error") {
  const Hda h = fx::square();
  CHECK_THROWS_AS(h.at("nope"), UnknownCellError);
  CHECK_THROWS_AS(simple_steps(h, CellId{99}), UnknownCellError);
  CHECK_THROWS_AS(reachable(h, CellId{99}), UnknownCellError);
}

TEST_CASE("cell labels") {
  const Hda h = fx::square();
  CHECK(cell_label(h, h.at("q2")) == std::vector<std::string>{"a", "b"});
  CHECK(cell_label(h, h.at("q0_3")).empty());
  CHECK(cell_label(h, h.at("b_left")) == std::vector<std::string>{"b"});
  CHECK(h.edge_label(event_edge(h, h.at("q2"), 1)) == std::optional<std::string>("a"));
  CHECK(h.edge_label(event_edge(h, h.at("q2"), 2)) == std::optional<std::string>("b"));

  const Hda cube = hypercube({"x", "y", "z"}, {{"x", "a"}, {"y", "a"}, {"z", "b"}});
  CHECK(validate(cube).ok());
  const CellId top = cube.level(3).front();
  CHECK(cell_label(cube, top) == std::vector<std::string>{"a", "a", "b"});
  std::multiset<std::string> via_chains;
  for (int j = 1; j <= 3; ++j) {
    auto labels = event_labels(cube, top, j);
    CHECK(labels.size() == 1);
    via_chains.insert(*labels.begin());
  }
  CHECK(std::vector<std::string>(via_chains.begin(), via_chains.end()) == cell_label(cube, top));

  HdaBuilder unl;
  CellId x = unl.add_cell("x", 0);
  CellId e = unl.add_cell("e", 1);
  unl.set_src(e, 1, x).set_tgt(e, 1, x);
  CHECK_THROWS_AS(cell_label(unl.build(), e), MissingLabelError);
}

TEST_CASE("cell labels do not depend on the descent order") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Hda h = fx::random_model(seed, 3, 10, false);
    for (CellId q : h.cells()) {
      if (h.dim(q) < 2) continue;
      std::multiset<std::string> m;
      for (int j = 1; j <= h.dim(q); ++j) {
        auto ls = event_labels(h, q, j);
        REQUIRE(ls.size() == 1);
        m.insert(*ls.begin());
      }
      CHECK(std::vector<std::string>(m.begin(), m.end()) == cell_label(h, q));
      CHECK(oracle::label(h, q) == cell_label(h, q));
    }
  }
}

TEST_CASE("simple steps") {
  const Hda h = fx::square();
  const auto from_start = simple_steps(h, h.at("q0_1"));
  REQUIRE(from_start.size() == 2);
  std::set<std::string> targets;
  for (const auto& st : from_start) {
    CHECK(st.kind == StepKind::Start);
    CHECK(h.s(st.to, st.index) == st.from);
    targets.insert(h.name(st.to));
  }
  CHECK(targets == std::set<std::string>{"a_low", "b_left"});

  const auto from_square = simple_steps(h, h.at("q2"));
  REQUIRE(from_square.size() == 2);
  for (const auto& st : from_square) CHECK(st.kind == StepKind::Terminate);

  HdaBuilder b;
  CellId solo = b.add_cell("solo", 0);
  CHECK(simple_steps(b.build(), solo).empty());
}

TEST_CASE("reachability") {
  const Hda h = fx::square();
  CHECK(reachable(h, h.at("q0_1")).size() == 9);
  CHECK(reachable(h, h.at("q0_3")) == std::vector<CellId>{h.at("q0_3")});
  for (CellId q : h.cells()) {
    const auto r = reachable(h, q);
    CHECK(std::binary_search(r.begin(), r.end(), q));
  }
}

TEST_CASE("reachability equals the transitive closure of steps") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Hda h = fx::random_model(seed, 2, 16, seed % 2 == 0);
    REQUIRE(h.size() <= 50);
    const auto tc = oracle::transitive_closure(h);
    for (CellId q : h.cells()) {
      std::vector<CellId> expect;
      for (CellId c : h.cells())
        if (tc[q.value][c.value]) expect.push_back(c);
      CHECK(reachable(h, q) == expect);
    }
  }
}

TEST_CASE("reachability is monotone when cells are added") {
  const Hda h = fx::hollow_square();
  const Hda bigger = fx::square();
  for (CellId q : h.cells()) {
    const auto small = reachable(h, q);
    const auto big = reachable(bigger, bigger.at(h.name(q)));
    for (CellId c : small) {
      const CellId mapped = bigger.at(h.name(c));
      CHECK(std::binary_search(big.begin(), big.end(), mapped));
    }
  }
}

TEST_CASE("truncation") {
  const Hda h = fx::square();
  const Hda hollow = truncate_above(h, 1);
  CHECK(validate(hollow).ok());
  CHECK(hollow == fx::hollow_square());
  CHECK(truncate_above(h, 2) == h);
  CHECK(truncate_above(h, 7) == h);
  const Hda states = truncate_above(h, 0);
  CHECK(states.size() == 4);
  CHECK(states.max_dim() == 0);
}

TEST_CASE("random generation is deterministic and valid") {
  RandomHdaParams p;
  p.max_dim = 3;
  p.cells_per_level = {8, 12, 8, 3};
  p.seed = 1;
  CHECK(generate_random(p) == generate_random(p));
  int valid = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    p.seed = seed;
    const Hda h = generate_random(p);
    if (validate(h).ok() && laws_hold(h)) ++valid;
    CHECK(validate(truncate_above(h, static_cast<int>(seed % 3))).ok());
  }
  CHECK(valid == 500);
}

TEST_CASE("random generation edge cases") {
  RandomHdaParams p;
  p.cells_per_level = {1, 0, 0};
  const Hda single = generate_random(p);
  CHECK(single.size() == 1);
  CHECK(validate(single).ok());

  RandomHdaParams bad;
  bad.cells_per_level = {0};
  CHECK_THROWS_AS(generate_random(bad), InfeasibleError);
  bad.cells_per_level = {3, 3};
  bad.alphabet = {};
  CHECK_THROWS_AS(generate_random(bad), InfeasibleError);
  bad.max_dim = 11;
  CHECK_THROWS_AS(generate_random(bad), InfeasibleError);
}

TEST_CASE("acyclic generation produces acyclic step graphs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) CHECK(oracle::is_acyclic(fx::random_model(seed, 2, 8, true)));
}
