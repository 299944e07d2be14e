#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hdml/formula.hpp"
#include "hdml/hda.hpp"
#include "hdml/semantics.hpp"

namespace hdml {

struct FiltrationResult {
  Hda quotient;
  std::vector<CellId> class_of;  // indexed by source CellId::value
  std::vector<Formula> closure_used;
  std::vector<std::string> warnings;

  CellId operator[](CellId q) const { return class_of.at(q.value); }
};

FiltrationResult filtrate(const Model& m, const Formula& phi);

struct FiltrationMismatch {
  Formula formula;
  CellId cell;
  bool holds_in_source = false;
};

struct FiltrationLemmaReport {
  std::vector<FiltrationMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

FiltrationLemmaReport check_filtration_lemma(const Model& m, const Formula& phi);
// Same check against an already computed filtration.
FiltrationLemmaReport check_filtration_lemma(const Model& m, const FiltrationResult& f);

using BigInt = boost::multiprecision::cpp_int;

struct SizeBound {
  int n = 0;
  int phi_size = 1;
  BigInt N;
  BigInt exponent;              // phi_size * N
  std::optional<BigInt> bound;  // 2^exponent, when small enough to hold in memory
};

// Exponents above this many bits are reported but not materialised.
inline constexpr unsigned kMaxMaterialisedBits = 1U << 20;

// N(n) = sum_k 2^k * n!/(n-k)!, each term an integer.
BigInt concurrency_count(int n);
SizeBound size_bound(int n, int phi_size);
// sum over n = 0..phi_size of 2^(phi_size * N(n)). Throws BudgetError when
// the value would not fit kMaxMaterialisedBits.
BigInt small_model_bound(int phi_size);

struct SatBudget {
  std::size_t max_cells = 32;
  int max_dim = 3;
  std::chrono::milliseconds time{2000};
  std::size_t max_models = 20000;
};

struct SatWitness {
  Hda model;
  CellId cell;
};

struct NoModelWithinBudget {
  std::size_t models_explored = 0;
  bool budget_exhausted = false;  // false: every candidate in range was tried
  std::string reason;
};

using SatResult = std::variant<SatWitness, NoModelWithinBudget>;

SatResult decide_sat_bounded(const Formula& phi, const SatBudget& budget = {});

struct CompactnessReport {
  int m = 0;
  Hda cube;
  // witness[i] = a cell satisfying nested(i, After, true), for i = 0..m.
  std::vector<std::optional<CellId>> witness;
  // Cells of the cube satisfying nested(m + 1, After, true); expected empty.
  std::vector<CellId> beyond;
  bool ok() const;
};

CompactnessReport compactness_demo(int m);

}  // namespace hdml
