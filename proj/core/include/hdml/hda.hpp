#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hdml {

// Dense index of a cell inside one Hda. The user-facing name lives in the
// Hda; the index is what every algorithm works with.
struct CellId {
  std::uint32_t value = 0;
  friend auto operator<=>(CellId, CellId) = default;
};

enum class StepKind : std::uint8_t { Start, Terminate };

struct SimpleStep {
  CellId from;
  CellId to;
  StepKind kind = StepKind::Start;
  int index = 1;  // 1-based, as in s_i / t_i
  friend auto operator<=>(const SimpleStep&, const SimpleStep&) = default;
};

struct Path {
  CellId start;
  std::vector<SimpleStep> steps;

  CellId end() const { return steps.empty() ? start : steps.back().to; }
  bool chains() const;
};

// A cell q' together with an index i such that src(q', i) (or tgt) is the
// cell this record is attached to.
struct Coface {
  CellId cell;
  int index = 1;
  friend auto operator<=>(const Coface&, const Coface&) = default;
};

class HdaBuilder;

class Hda {
 public:
  Hda() = default;

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  std::vector<CellId> cells() const;

  bool contains(CellId q) const { return q.value < cells_.size(); }
  void require(CellId q) const;  // throws UnknownCellError

  int dim(CellId q) const { return cells_[q.value].dim; }
  const std::string& name(CellId q) const { return cells_[q.value].name; }
  std::optional<CellId> find(std::string_view name) const;
  CellId at(std::string_view name) const;  // throws UnknownCellError

  // -1 for the empty HDA.
  int max_dim() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<CellId>& level(int n) const;

  std::optional<CellId> src(CellId q, int i) const;
  std::optional<CellId> tgt(CellId q, int i) const;
  // Total versions for valid HDAs; throw hdml::Error when undefined.
  CellId s(CellId q, int i) const;
  CellId t(CellId q, int i) const;

  const std::optional<std::string>& edge_label(CellId q) const { return cells_[q.value].label; }
  const std::vector<std::string>& valuation(CellId q) const { return cells_[q.value].props; }
  bool has_prop(CellId q, std::string_view p) const;

  const std::vector<CellId>& initial() const { return initial_; }
  const std::vector<CellId>& final_states() const { return final_; }

  const std::vector<Coface>& s_cofaces(CellId q) const { return s_cofaces_[q.value]; }
  const std::vector<Coface>& t_cofaces(CellId q) const { return t_cofaces_[q.value]; }

  std::set<std::string> props() const;
  std::set<std::string> actions() const;

  // Problems found while assembling the HDA (duplicate names, indices out
  // of range, conflicting map entries). validate() reports them.
  const std::vector<std::string>& construction_issues() const { return issues_; }

  friend bool operator==(const Hda& a, const Hda& b);

 private:
  friend class HdaBuilder;

  struct Cell {
    std::string name;
    int dim = 0;
    std::vector<std::optional<CellId>> src;
    std::vector<std::optional<CellId>> tgt;
    std::optional<std::string> label;
    std::vector<std::string> props;
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  std::vector<Cell> cells_;
  std::vector<std::vector<CellId>> levels_;
  std::unordered_map<std::string, CellId> by_name_;
  std::vector<CellId> initial_;
  std::vector<CellId> final_;
  std::vector<std::vector<Coface>> s_cofaces_;
  std::vector<std::vector<Coface>> t_cofaces_;
  std::vector<std::string> issues_;
};

class HdaBuilder {
 public:
  HdaBuilder() = default;
  // Starts from a copy of an existing HDA so callers can extend it.
  explicit HdaBuilder(const Hda& base);

  CellId add_cell(std::string name, int dim);
  std::optional<CellId> find(std::string_view name) const;
  std::size_t size() const { return cells_.size(); }
  int dim(CellId q) const { return cells_[q.value].dim; }

  HdaBuilder& set_src(CellId q, int i, CellId face);
  HdaBuilder& set_tgt(CellId q, int i, CellId face);
  HdaBuilder& set_label(CellId edge, std::string action);
  HdaBuilder& add_prop(CellId q, std::string prop);
  HdaBuilder& add_initial(CellId q);
  HdaBuilder& add_final(CellId q);
  void note_issue(std::string issue) { issues_.push_back(std::move(issue)); }

  Hda build() const;

 private:
  void set_map(bool source, CellId q, int i, CellId face);

  std::vector<Hda::Cell> cells_;
  std::unordered_map<std::string, CellId> by_name_;
  std::vector<CellId> initial_;
  std::vector<CellId> final_;
  std::vector<std::string> issues_;
};

enum class ViolationKind : std::uint8_t {
  Structure,
  MissingMap,
  MapDimension,
  CubicalLaw,
  LabelCoherence,
  LabelPlacement,
  InitialFinal,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::Structure;
  std::string message;
  std::vector<CellId> cells;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Hda& h);

// The edge carrying the i-th event of q, reached through source maps only.
CellId event_edge(const Hda& h, CellId q, int i);

// Sorted multiset of the labels of the events executing in q.
std::vector<std::string> cell_label(const Hda& h, CellId q);

std::vector<SimpleStep> simple_steps(const Hda& h, CellId q);

// Sorted by CellId.
std::vector<CellId> reachable(const Hda& h, CellId q);

Hda truncate_above(const Hda& h, int m);

struct RandomHdaParams {
  int max_dim = 2;
  // Upper bound on the number of cells generated at each level; levels past
  // the end of the vector are treated as 0.
  std::vector<int> cells_per_level = {8, 12, 6};
  std::vector<std::string> alphabet = {"a", "b"};
  std::vector<std::string> props = {"p", "q"};
  std::uint64_t seed = 1;
  // Gluing a fragment at both corners can close cycles in the step graph.
  bool allow_cycles = true;
  int max_fragments = 64;
};

Hda generate_random(const RandomHdaParams& params);

}  // namespace hdml
