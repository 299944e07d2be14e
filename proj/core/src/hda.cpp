#include "hdml/hda.hpp"

#include <algorithm>
#include <deque>

#include "hdml/errors.hpp"

namespace hdml {

bool Path::chains() const {
  CellId cur = start;
  for (const auto& step : steps) {
    if (step.from != cur) return false;
    cur = step.to;
  }
  return true;
}

// ---------------------------------------------------------------- Hda

std::vector<CellId> Hda::cells() const {
  std::vector<CellId> out(cells_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = CellId{static_cast<std::uint32_t>(k)};
  return out;
}

void Hda::require(CellId q) const {
  if (!contains(q)) throw UnknownCellError("#" + std::to_string(q.value));
}

std::optional<CellId> Hda::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

CellId Hda::at(std::string_view name) const {
  if (auto q = find(name)) return *q;
  throw UnknownCellError(std::string(name));
}

const std::vector<CellId>& Hda::level(int n) const {
  static const std::vector<CellId> kEmpty;
  if (n < 0 || n >= static_cast<int>(levels_.size())) return kEmpty;
  return levels_[static_cast<std::size_t>(n)];
}

std::optional<CellId> Hda::src(CellId q, int i) const {
  const auto& c = cells_[q.value];
  if (i < 1 || i > static_cast<int>(c.src.size())) return std::nullopt;
  return c.src[static_cast<std::size_t>(i - 1)];
}

std::optional<CellId> Hda::tgt(CellId q, int i) const {
  const auto& c = cells_[q.value];
  if (i < 1 || i > static_cast<int>(c.tgt.size())) return std::nullopt;
  return c.tgt[static_cast<std::size_t>(i - 1)];
}

CellId Hda::s(CellId q, int i) const {
  if (auto r = src(q, i)) return *r;
  throw Error("s_" + std::to_string(i) + " undefined on '" + name(q) + "'");
}

CellId Hda::t(CellId q, int i) const {
  if (auto r = tgt(q, i)) return *r;
  throw Error("t_" + std::to_string(i) + " undefined on '" + name(q) + "'");
}

bool Hda::has_prop(CellId q, std::string_view p) const {
  const auto& props = cells_[q.value].props;
  return std::binary_search(props.begin(), props.end(), p);
}

std::set<std::string> Hda::props() const {
  std::set<std::string> out;
  for (const auto& c : cells_) out.insert(c.props.begin(), c.props.end());
  return out;
}

std::set<std::string> Hda::actions() const {
  std::set<std::string> out;
  for (const auto& c : cells_)
    if (c.label) out.insert(*c.label);
  return out;
}

bool operator==(const Hda& a, const Hda& b) {
  return a.cells_ == b.cells_ && a.initial_ == b.initial_ && a.final_ == b.final_;
}

// ---------------------------------------------------------------- builder

HdaBuilder::HdaBuilder(const Hda& base)
    : cells_(base.cells_),
      by_name_(base.by_name_),
      initial_(base.initial_),
      final_(base.final_),
      issues_(base.issues_) {}

CellId HdaBuilder::add_cell(std::string name, int dim) {
  CellId id{static_cast<std::uint32_t>(cells_.size())};
  if (dim < 0) {
    issues_.push_back("cell '" + name + "' has negative dimension");
    dim = 0;
  }
  if (!by_name_.emplace(name, id).second) issues_.push_back("duplicate cell id '" + name + "'");
  Hda::Cell c;
  c.name = std::move(name);
  c.dim = dim;
  c.src.resize(static_cast<std::size_t>(dim));
  c.tgt.resize(static_cast<std::size_t>(dim));
  cells_.push_back(std::move(c));
  return id;
}

std::optional<CellId> HdaBuilder::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void HdaBuilder::set_map(bool source, CellId q, int i, CellId face) {
  const char* map = source ? "s" : "t";
  auto& c = cells_.at(q.value);
  if (face.value >= cells_.size()) {
    issues_.push_back(std::string(map) + " map of '" + c.name + "' points to an unknown cell");
    return;
  }
  if (i < 1 || i > c.dim) {
    issues_.push_back(std::string(map) + "_" + std::to_string(i) + " given for '" + c.name +
                      "' of dimension " + std::to_string(c.dim));
    return;
  }
  auto& slot = (source ? c.src : c.tgt)[static_cast<std::size_t>(i - 1)];
  if (slot && *slot != face) {
    issues_.push_back(std::string(map) + "_" + std::to_string(i) + " of '" + c.name +
                      "' assigned twice");
  }
  slot = face;
}

HdaBuilder& HdaBuilder::set_src(CellId q, int i, CellId face) {
  set_map(true, q, i, face);
  return *this;
}

HdaBuilder& HdaBuilder::set_tgt(CellId q, int i, CellId face) {
  set_map(false, q, i, face);
  return *this;
}

HdaBuilder& HdaBuilder::set_label(CellId edge, std::string action) {
  cells_.at(edge.value).label = std::move(action);
  return *this;
}

HdaBuilder& HdaBuilder::add_prop(CellId q, std::string prop) {
  cells_.at(q.value).props.push_back(std::move(prop));
  return *this;
}

HdaBuilder& HdaBuilder::add_initial(CellId q) {
  initial_.push_back(q);
  return *this;
}

HdaBuilder& HdaBuilder::add_final(CellId q) {
  final_.push_back(q);
  return *this;
}

Hda HdaBuilder::build() const {
  Hda h;
  h.cells_ = cells_;
  h.by_name_ = by_name_;
  h.issues_ = issues_;
  for (auto& c : h.cells_) {
    std::sort(c.props.begin(), c.props.end());
    c.props.erase(std::unique(c.props.begin(), c.props.end()), c.props.end());
  }
  auto uniq = [](std::vector<CellId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  h.initial_ = uniq(initial_);
  h.final_ = uniq(final_);

  int top = -1;
  for (const auto& c : h.cells_) top = std::max(top, c.dim);
  h.levels_.assign(static_cast<std::size_t>(top + 1), {});
  h.s_cofaces_.assign(h.cells_.size(), {});
  h.t_cofaces_.assign(h.cells_.size(), {});
  for (std::uint32_t k = 0; k < h.cells_.size(); ++k) {
    const auto& c = h.cells_[k];
    h.levels_[static_cast<std::size_t>(c.dim)].push_back(CellId{k});
    for (int i = 1; i <= c.dim; ++i) {
      if (auto f = c.src[static_cast<std::size_t>(i - 1)])
        h.s_cofaces_[f->value].push_back(Coface{CellId{k}, i});
      if (auto f = c.tgt[static_cast<std::size_t>(i - 1)])
        h.t_cofaces_[f->value].push_back(Coface{CellId{k}, i});
    }
  }
  return h;
}

// ---------------------------------------------------------------- validate

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Structure: return "structure";
    case ViolationKind::MissingMap: return "missing-map";
    case ViolationKind::MapDimension: return "map-dimension";
    case ViolationKind::CubicalLaw: return "cubical-law";
    case ViolationKind::LabelCoherence: return "label-coherence";
    case ViolationKind::LabelPlacement: return "label-placement";
    case ViolationKind::InitialFinal: return "initial-final";
  }
  return "unknown";
}

ValidationReport validate(const Hda& h) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg, std::vector<CellId> cells) {
    report.violations.push_back(Violation{kind, std::move(msg), std::move(cells)});
  };

  for (const auto& issue : h.construction_issues()) add(ViolationKind::Structure, issue, {});

  // Maps must be total and drop exactly one dimension. Cells whose maps are
  // broken are excluded from the law checks below.
  std::vector<bool> maps_ok(h.size(), true);
  for (CellId q : h.cells()) {
    const int n = h.dim(q);
    for (int i = 1; i <= n; ++i) {
      for (int side = 0; side < 2; ++side) {
        auto f = side == 0 ? h.src(q, i) : h.tgt(q, i);
        const std::string map = (side == 0 ? "s_" : "t_") + std::to_string(i);
        if (!f) {
          add(ViolationKind::MissingMap, map + " undefined on '" + h.name(q) + "'", {q});
          maps_ok[q.value] = false;
        } else if (h.dim(*f) != n - 1) {
          add(ViolationKind::MapDimension,
              map + "('" + h.name(q) + "') = '" + h.name(*f) + "' has dimension " +
                  std::to_string(h.dim(*f)) + ", expected " + std::to_string(n - 1),
              {q, *f});
          maps_ok[q.value] = false;
        }
      }
    }
  }

  // alpha_i(beta_j(q)) = beta_{j-1}(alpha_i(q)) for i < j.
  for (CellId q : h.cells()) {
    const int n = h.dim(q);
    if (n < 2 || !maps_ok[q.value]) continue;
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) {
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            auto alpha = [&](CellId c, int k) { return a == 0 ? h.src(c, k) : h.tgt(c, k); };
            auto beta = [&](CellId c, int k) { return b == 0 ? h.src(c, k) : h.tgt(c, k); };
            auto inner_l = beta(q, j);
            auto inner_r = alpha(q, i);
            if (!inner_l || !inner_r || !maps_ok[inner_l->value] || !maps_ok[inner_r->value])
              continue;
            auto lhs = alpha(*inner_l, i);
            auto rhs = beta(*inner_r, j - 1);
            if (lhs && rhs && *lhs != *rhs) {
              const char an = a == 0 ? 's' : 't';
              const char bn = b == 0 ? 's' : 't';
              add(ViolationKind::CubicalLaw,
                  std::string(1, an) + "_" + std::to_string(i) + "(" + bn + "_" +
                      std::to_string(j) + "(" + h.name(q) + ")) = '" + h.name(*lhs) + "' but " +
                      bn + "_" + std::to_string(j - 1) + "(" + an + "_" + std::to_string(i) + "(" +
                      h.name(q) + ")) = '" + h.name(*rhs) + "'",
                  {q});
            }
          }
        }
      }
    }
  }

  for (CellId q : h.cells()) {
    if (h.edge_label(q) && h.dim(q) != 1)
      add(ViolationKind::LabelPlacement, "label on non-edge '" + h.name(q) + "'", {q});
  }

  // Opposite faces of a square carry the same event. Only checked where
  // both edges are labeled; plain cubical sets may omit labels.
  for (CellId q : h.level(2)) {
    if (!maps_ok[q.value]) continue;
    for (int i = 1; i <= 2; ++i) {
      CellId lo = *h.src(q, i);
      CellId hi = *h.tgt(q, i);
      const auto& la = h.edge_label(lo);
      const auto& lb = h.edge_label(hi);
      if (la && lb && *la != *lb) {
        add(ViolationKind::LabelCoherence,
            "s_" + std::to_string(i) + " and t_" + std::to_string(i) + " of '" + h.name(q) +
                "' are labeled '" + *la + "' and '" + *lb + "'",
            {q, lo, hi});
      }
    }
  }

  auto check_states = [&](const std::vector<CellId>& v, const char* what) {
    for (CellId q : v) {
      if (!h.contains(q)) {
        add(ViolationKind::InitialFinal, std::string(what) + " cell does not exist", {});
      } else if (h.dim(q) != 0) {
        add(ViolationKind::InitialFinal,
            std::string(what) + " cell '" + h.name(q) + "' is not a state", {q});
      }
    }
  };
  check_states(h.initial(), "initial");
  check_states(h.final_states(), "final");
  return report;
}

// ---------------------------------------------------------------- labels

CellId event_edge(const Hda& h, CellId q, int i) {
  h.require(q);
  const int n = h.dim(q);
  if (i < 1 || i > n) throw Error("event index out of range for '" + h.name(q) + "'");
  // Dropping events above i leaves lower indices untouched; then the events
  // below i are removed one at a time through index 1.
  CellId c = q;
  for (int j = n; j > i; --j) c = h.s(c, j);
  for (int k = 1; k < i; ++k) c = h.s(c, 1);
  return c;
}

std::vector<std::string> cell_label(const Hda& h, CellId q) {
  h.require(q);
  std::vector<std::string> out;
  const int n = h.dim(q);
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    CellId e = event_edge(h, q, i);
    const auto& l = h.edge_label(e);
    if (!l) throw MissingLabelError(h.name(e));
    out.push_back(*l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- steps

std::vector<SimpleStep> simple_steps(const Hda& h, CellId q) {
  h.require(q);
  std::vector<SimpleStep> out;
  for (const auto& cf : h.s_cofaces(q))
    out.push_back(SimpleStep{q, cf.cell, StepKind::Start, cf.index});
  for (int i = 1; i <= h.dim(q); ++i) {
    if (auto f = h.tgt(q, i)) out.push_back(SimpleStep{q, *f, StepKind::Terminate, i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellId> reachable(const Hda& h, CellId q) {
  h.require(q);
  std::vector<bool> seen(h.size(), false);
  std::deque<CellId> work{q};
  seen[q.value] = true;
  while (!work.empty()) {
    CellId c = work.front();
    work.pop_front();
    auto visit = [&](CellId d) {
      if (!seen[d.value]) {
        seen[d.value] = true;
        work.push_back(d);
      }
    };
    for (const auto& cf : h.s_cofaces(c)) visit(cf.cell);
    for (int i = 1; i <= h.dim(c); ++i)
      if (auto f = h.tgt(c, i)) visit(*f);
  }
  std::vector<CellId> out;
  for (CellId c : h.cells())
    if (seen[c.value]) out.push_back(c);
  return out;
}

Hda truncate_above(const Hda& h, int m) {
  HdaBuilder b;
  std::vector<std::optional<CellId>> remap(h.size());
  for (CellId q : h.cells()) {
    if (h.dim(q) <= m) remap[q.value] = b.add_cell(h.name(q), h.dim(q));
  }
  for (CellId q : h.cells()) {
    if (!remap[q.value]) continue;
    CellId nq = *remap[q.value];
    for (int i = 1; i <= h.dim(q); ++i) {
      if (auto f = h.src(q, i); f && remap[f->value]) b.set_src(nq, i, *remap[f->value]);
      if (auto f = h.tgt(q, i); f && remap[f->value]) b.set_tgt(nq, i, *remap[f->value]);
    }
    if (const auto& l = h.edge_label(q)) b.set_label(nq, *l);
    for (const auto& p : h.valuation(q)) b.add_prop(nq, p);
  }
  for (CellId q : h.initial())
    if (remap[q.value]) b.add_initial(*remap[q.value]);
  for (CellId q : h.final_states())
    if (remap[q.value]) b.add_final(*remap[q.value]);
  for (const auto& issue : h.construction_issues()) b.note_issue(issue);
  return b.build();
}

}  // namespace hdml
