#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdml/formula.hpp"
#include "hdml/hda.hpp"

namespace hdml {

enum class SchemaKind : std::uint8_t {
  Tautology,   // sample instances of the propositional-tautology row
  Axiom,
  Theorem,
  Exercise,
  NonTheorem,  // expected to be falsified somewhere
};

std::string_view to_string(SchemaKind k);

// Metavariables are propositions with these reserved names.
inline constexpr std::string_view kMetaPhi = "$phi";
inline constexpr std::string_view kMetaPsi = "$psi";

struct Schema {
  std::string id;
  SchemaKind kind = SchemaKind::Axiom;
  int arity = 0;                  // number of metavariables (0..2)
  std::optional<int> min_index;   // set for families indexed by i
  std::function<Formula(int)> make;

  bool indexed() const { return min_index.has_value(); }
  // Template with metavariables; i is ignored for unindexed schemas.
  Formula form(int i = 0) const;
};

// Axiom schemas: the tautology samples plus the sixteen modal schemas.
const std::vector<Schema>& catalog();
// Derivable schemas T1..T18, the exercise, and its indexed generalisation.
const std::vector<Schema>& theorem_catalog();
// Formulas that are not valid on all HDAs, kept as search targets.
const std::vector<Schema>& non_theorem_catalog();
// Looks through all three catalogs; throws SchemaError for unknown ids.
const Schema& find_schema(const std::string& id);

// Replaces metavariables by the given formulas. Throws SchemaError when a
// metavariable is unassigned, or when the index is missing or too small.
Formula instantiate(const Schema& s, const std::map<std::string, Formula>& assignment,
                    std::optional<int> i = std::nullopt);

// depth 0: false, true, p, q, ~p, ~q, p & q, p | q over the given two
// propositions; depth k adds <s>x, <t>x, [s]x, [t]x for x of depth k-1.
std::vector<Formula> formula_pool(int depth, const std::vector<std::string>& props = {"p", "q"});

// Deterministic corpus of valid HDAs with propositions p, q and the two
// reserved code propositions used by at_least_terminable. Includes a few
// models of dimension 4.
std::vector<Hda> default_corpus(std::size_t count = 100, std::uint64_t seed = 1);

// HDAs whose cubical laws are broken by rewiring one face map. Every
// returned model fails validate().
std::vector<Hda> mutation_corpus(std::size_t count = 200, std::uint64_t seed = 1);

struct SuiteOptions {
  int i_max = 3;
  std::size_t max_pairs = 600;  // sampled assignments for two-metavariable schemas
  std::uint64_t seed = 7;
  bool check_rules = true;
  std::size_t max_failures = 50;  // stop collecting after this many
};

struct SuiteFailure {
  std::string schema;
  Formula instance;
  std::size_t model = 0;
  CellId cell;
};

struct SuiteReport {
  std::size_t models = 0;
  std::size_t instances = 0;
  std::size_t checks = 0;  // instance x model evaluations
  std::map<std::string, std::size_t> instances_per_schema;
  std::vector<SuiteFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Every instance of every given schema must be valid on every model.
SuiteReport check_schemas(const std::vector<Schema>& schemas, const std::vector<Hda>& models,
                          const std::vector<Formula>& pool, const SuiteOptions& opts = {});

// Axiom catalog plus MP, D and D' checked as validity preservation.
SuiteReport soundness_suite(const std::vector<Hda>& models, const std::vector<Formula>& pool,
                            const SuiteOptions& opts = {});

// Theorem catalog plus the derived box rules as validity preservation.
SuiteReport theorem_suite(const std::vector<Hda>& models, const std::vector<Formula>& pool,
                          const SuiteOptions& opts = {});

// First instance of s falsified on some model, searching models in order.
std::optional<SuiteFailure> find_counterexample(const Schema& s, const std::vector<Hda>& models,
                                                const std::vector<Formula>& pool,
                                                const SuiteOptions& opts = {});

}  // namespace hdml
