#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hdml/formula.hpp"
#include "hdml/hda.hpp"

namespace hdml {

using CellSet = boost::dynamic_bitset<>;

// An HDA with its valuation, plus the vocabulary formulas are checked
// against. The vocabulary always contains every proposition and action
// occurring in the HDA.
class Model {
 public:
  Model(Hda h);  // NOLINT(google-explicit-constructor): an Hda is a model
  Model(Hda h, const Vocabulary& extra);

  const Hda& hda() const { return *hda_; }
  const std::shared_ptr<const Hda>& shared_hda() const { return hda_; }
  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  std::shared_ptr<const Hda> hda_;
  Vocabulary vocab_;
};

// Evaluates formulas bottom-up and memoises the satisfaction set of every
// subformula it has seen. One instance per model; not thread-safe.
class Checker {
 public:
  explicit Checker(const Model& m);

  const CellSet& sat(const Formula& f);
  bool satisfies(CellId q, const Formula& f);

  CellSet until_c(const CellSet& f, const CellSet& g) const;
  CellSet until_l(const CellSet& f, const CellSet& g);

  const Hda& hda() const { return *hda_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  CellSet compute(const Formula& f);
  const std::vector<std::string>& label(CellId q);
  bool extends_by(CellId bigger, CellId smaller, const std::string& a);
  void ensure_reach();

  std::shared_ptr<const Hda> hda_;
  std::unordered_map<Formula, CellSet, FormulaHash> memo_;
  std::vector<std::optional<std::vector<std::string>>> labels_;
  std::vector<CellSet> reach_;  // reach_[q] = cells reachable from q
  std::vector<CellSet> back_;   // back_[q] = cells that reach q
};

bool satisfies(const Model& m, CellId q, const Formula& f);
std::vector<CellId> sat_set(const Model& m, const Formula& f);
bool valid_on(const Model& m, const Formula& f);
std::vector<CellId> eval_untilC(const Model& m, const Formula& f, const Formula& g);
std::vector<CellId> eval_untilL(const Model& m, const Formula& f, const Formula& g);

std::vector<CellId> to_cells(const CellSet& s);

}  // namespace hdml
