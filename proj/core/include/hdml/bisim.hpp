#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "hdml/formula.hpp"
#include "hdml/hda.hpp"

namespace hdml {

enum class Sign : std::uint8_t { Plus, Minus };

// a+ labels a start step of an a-event, a- a terminate step.
struct SplitSymbol {
  std::string action;
  Sign sign = Sign::Plus;
  friend auto operator<=>(const SplitSymbol&, const SplitSymbol&) = default;
};

std::string to_string(const SplitSymbol& s);

using SplitTrace = std::vector<SplitSymbol>;

struct SplitLts {
  struct Edge {
    CellId from;
    SplitSymbol label;
    CellId to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };
  std::vector<CellId> states;  // sorted
  std::vector<Edge> edges;     // sorted
  CellId start;
};

// Label of one simple step. Throws MissingLabelError for unlabeled events
// and WellFormednessError when the two cell labels do not differ by
// exactly one symbol.
SplitSymbol split_label(const Hda& h, const SimpleStep& step);
SplitTrace split_trace(const Hda& h, const Path& path);

SplitLts split_lts(const Hda& h, CellId q0);

bool split_bisimilar(const Hda& a, CellId qa, const Hda& b, CellId qb);

enum class OracleVerdict : std::uint8_t { Bisimilar, NotBisimilar, DepthExhausted };
std::string_view to_string(OracleVerdict v);

// Literal search over pairs of paths, extended one step at a time, without
// sharing work between pairs that end in the same cells. Exponential; meant
// for small models only. DepthExhausted means some pair of paths of length
// `depth` could still be extended and nothing decided the answer earlier.
OracleVerdict path_bisim_oracle(const Hda& a, CellId qa, const Hda& b, CellId qb, int depth);

// Formulas built from true with <s x>, <t x>, negation and conjunction,
// up to modal depth `depth`, over the given actions. Throws BudgetError
// once more than max_size formulas would be produced.
std::vector<Formula> modal_pool(const std::vector<std::string>& actions, int depth,
                                std::size_t max_size = 50000);

bool modal_equiv(const Hda& a, CellId qa, const Hda& b, CellId qb,
                 const std::vector<Formula>& pool);
// Uses modal_pool over the union of both action sets.
bool modal_equiv(const Hda& a, CellId qa, const Hda& b, CellId qb, int depth,
                 std::size_t max_size = 50000);

// nullopt iff the two cells are split-bisimilar. Otherwise a formula that
// holds at (a, qa) and fails at (b, qb); the result is checked before it
// is returned.
std::optional<Formula> distinguishing_formula(const Hda& a, CellId qa, const Hda& b, CellId qb);

}  // namespace hdml
