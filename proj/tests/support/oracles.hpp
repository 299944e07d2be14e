#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hdml/encodings.hpp"
#include "hdml/formula.hpp"
#include "hdml/hda.hpp"

// Deliberately naive reference implementations. They share no evaluation
// code with the library: every clause is computed from the face maps with
// plain loops and explicit path enumeration.
namespace oracle {

// Label multiset: the last event through repeated s_1, the rest recursively
// through s_n.
std::vector<std::string> label(const hdml::Hda& h, hdml::CellId q);

// Direct recursive satisfaction. Untils enumerate paths, so they are only
// supported on acyclic models (throws std::logic_error on a cycle).
bool sat(const hdml::Hda& h, hdml::CellId q, const hdml::Formula& f);

// Every path from q, including the empty one. Acyclic models only.
std::vector<hdml::Path> paths_from(const hdml::Hda& h, hdml::CellId q);

bool is_acyclic(const hdml::Hda& h);

// Reachability from the step relation by repeated squaring of a matrix.
std::vector<std::vector<bool>> transitive_closure(const hdml::Hda& h);

// Tiny modal language evaluated directly on a Kripke structure.
struct KForm {
  enum Kind { Prop, Not, And, Dia, Box, EU } kind = Prop;
  std::string prop;
  std::vector<KForm> args;
};
KForm random_kform(std::mt19937_64& rng, int depth, const std::vector<std::string>& props);
hdml::Formula to_hdml(const KForm& f);
std::set<std::string> kripke_sat(const hdml::KripkeStructure& k, const KForm& f);

// Filtration classes from a pairwise greatest-fixpoint relation: two cells
// are related iff they have the same dimension, agree on every closure
// formula, and their i-th source and target faces are related.
std::vector<std::vector<bool>> filtration_relation(const hdml::Hda& h, const std::vector<hdml::Formula>& closure);

// All subsets of events that are downward closed and conflict free.
std::vector<std::set<std::string>> configurations(const std::vector<std::string>& events,
                                                  const std::set<std::pair<std::string, std::string>>& leq,
                                                  const std::set<std::pair<std::string, std::string>>& conflict);

}  // namespace oracle
