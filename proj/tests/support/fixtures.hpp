#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hdml/encodings.hpp"
#include "hdml/formula.hpp"
#include "hdml/hda.hpp"

namespace fx {

// The filled square: states q0_1..q0_4, edges a_low (q0_1 -> q0_2),
// b_right (q0_2 -> q0_3), b_left (q0_1 -> q0_4), a_top (q0_4 -> q0_3) and
// the square q2 with s1 = b_left, t1 = b_right, s2 = a_low, t2 = a_top.
hdml::Hda square(bool filled = true);
inline hdml::Hda hollow_square() { return square(false); }
// The filled square with tgt(q2, 2) pointed at a_low instead of a_top.
hdml::Hda corrupted_square();

// Two copies of the filled square side by side, names suffixed _x / _y,
// both with the same valuation.
hdml::Hda twin_squares(const std::vector<std::string>& props = {});

// Processes as edge-only HDAs rooted at "r".
hdml::Hda a_then_b_or_c();       // a(b + c)
hdml::Hda a_b_or_a_c();          // ab + ac

// A model next to a second copy of the same model glued at the given root
// state: the result is split-bisimilar to the original at that root.
hdml::Hda doubled(const hdml::Hda& h, hdml::CellId root);

struct FormulaGen {
  std::vector<std::string> props = {"p", "q"};
  std::vector<std::string> actions = {"a", "b"};
  bool labeled = false;
  bool untils = false;
  bool sugar = true;  // emit ~, &, | besides the core connectives
};

hdml::Formula random_formula(std::mt19937_64& rng, int max_size, const FormulaGen& g = {});

hdml::KripkeStructure random_kripke(std::mt19937_64& rng, int states, int transitions,
                                    const std::vector<std::string>& actions = {"a", "b"},
                                    const std::vector<std::string>& props = {"p", "q"});

// Random models for property tests, acyclic when requested.
hdml::Hda random_model(std::uint64_t seed, int max_dim, int budget_per_level, bool acyclic,
                       const std::vector<std::string>& props = {"p", "q"},
                       const std::vector<std::string>& alphabet = {"a", "b"});

// A trace over {a, b, c} given by a random word: event k carries the k-th
// letter and e_i <= e_j is generated by i < j with dependent letters.
hdml::TraceSpec random_trace(std::mt19937_64& rng, int length);

// Prime event structure with a random order and hereditary conflict.
struct EventStructure {
  std::vector<std::string> events;
  std::set<hdml::EventPair> leq;       // reflexive, transitive
  std::set<hdml::EventPair> conflict;  // symmetric, irreflexive, hereditary
};
EventStructure random_event_structure(std::mt19937_64& rng, int events);

}  // namespace fx
