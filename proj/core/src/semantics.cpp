#include "hdml/semantics.hpp"

#include <algorithm>
#include <deque>

#include "hdml/errors.hpp"

namespace hdml {

Model::Model(Hda h) : Model(std::move(h), Vocabulary{}) {}

Model::Model(Hda h, const Vocabulary& extra)
    : hda_(std::make_shared<const Hda>(std::move(h))), vocab_(extra) {
  auto props = hda_->props();
  auto actions = hda_->actions();
  vocab_.props.insert(props.begin(), props.end());
  vocab_.actions.insert(actions.begin(), actions.end());
}

// Shares ownership with the model so a checker may outlive it.
Checker::Checker(const Model& m)
    : hda_(m.shared_hda()), labels_(m.hda().size()) {}

const CellSet& Checker::sat(const Formula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  CellSet s = compute(f);
  return memo_.emplace(f, std::move(s)).first->second;
}

bool Checker::satisfies(CellId q, const Formula& f) {
  hda_->require(q);
  return sat(f).test(q.value);
}

const std::vector<std::string>& Checker::label(CellId q) {
  auto& slot = labels_[q.value];
  if (!slot) slot = cell_label(*hda_, q);
  return *slot;
}

// label(bigger) = label(smaller) + {a} as multisets.
bool Checker::extends_by(CellId bigger, CellId smaller, const std::string& a) {
  std::vector<std::string> want = label(smaller);
  want.insert(std::upper_bound(want.begin(), want.end(), a), a);
  return want == label(bigger);
}

CellSet Checker::compute(const Formula& f) {
  const Hda& h = *hda_;
  const std::size_t n = h.size();
  CellSet out(n);
  switch (f.op()) {
    case Op::Bottom: break;
    case Op::Prop:
      for (CellId q : h.cells())
        if (h.has_prop(q, f.name())) out.set(q.value);
      break;
    case Op::Implies: {
      CellSet a = sat(f.lhs());
      out = ~a | sat(f.rhs());
      break;
    }
    case Op::During: {
      const CellSet& a = sat(f.arg());
      for (auto k = a.find_first(); k != CellSet::npos; k = a.find_next(k)) {
        CellId up{static_cast<std::uint32_t>(k)};
        for (int i = 1; i <= h.dim(up); ++i) out.set(h.s(up, i).value);
      }
      break;
    }
    case Op::After: {
      const CellSet& a = sat(f.arg());
      for (CellId q : h.cells()) {
        for (int i = 1; i <= h.dim(q) && !out.test(q.value); ++i)
          if (a.test(h.t(q, i).value)) out.set(q.value);
      }
      break;
    }
    case Op::DuringL: {
      CellSet a = sat(f.arg());
      for (auto k = a.find_first(); k != CellSet::npos; k = a.find_next(k)) {
        CellId up{static_cast<std::uint32_t>(k)};
        for (int i = 1; i <= h.dim(up); ++i) {
          CellId down = h.s(up, i);
          if (!out.test(down.value) && extends_by(up, down, f.name())) out.set(down.value);
        }
      }
      break;
    }
    case Op::AfterL: {
      CellSet a = sat(f.arg());
      for (CellId q : h.cells()) {
        for (int i = 1; i <= h.dim(q) && !out.test(q.value); ++i) {
          CellId down = h.t(q, i);
          if (a.test(down.value) && extends_by(q, down, f.name())) out.set(q.value);
        }
      }
      break;
    }
    case Op::UntilC: {
      CellSet a = sat(f.lhs());
      out = until_c(a, sat(f.rhs()));
      break;
    }
    case Op::UntilL: {
      CellSet a = sat(f.lhs());
      CellSet b = sat(f.rhs());
      out = until_l(a, b);
      break;
    }
  }
  return out;
}

// Least fixpoint, grown backwards along simple steps from the g-cells.
CellSet Checker::until_c(const CellSet& f, const CellSet& g) const {
  const Hda& h = *hda_;
  CellSet s = g;
  std::deque<CellId> work;
  for (auto k = g.find_first(); k != CellSet::npos; k = g.find_next(k))
    work.push_back(CellId{static_cast<std::uint32_t>(k)});
  auto offer = [&](CellId p) {
    if (!s.test(p.value) && f.test(p.value)) {
      s.set(p.value);
      work.push_back(p);
    }
  };
  while (!work.empty()) {
    CellId c = work.front();
    work.pop_front();
    for (int i = 1; i <= h.dim(c); ++i) offer(h.s(c, i));   // start step into c
    for (const auto& cf : h.t_cofaces(c)) offer(cf.cell);  // terminate step into c
  }
  return s;
}

void Checker::ensure_reach() {
  if (!reach_.empty() || hda_->empty()) return;
  const Hda& h = *hda_;
  const std::size_t n = h.size();
  reach_.assign(n, CellSet(n));
  back_.assign(n, CellSet(n));
  for (CellId q : h.cells()) {
    for (CellId r : reachable(h, q)) {
      reach_[q.value].set(r.value);
      back_[r.value].set(q.value);
    }
  }
}

CellSet Checker::until_l(const CellSet& f, const CellSet& g) {
  const std::size_t n = hda_->size();
  CellSet out(n);
  if (g.none()) return out;
  ensure_reach();
  const CellSet not_f = ~f;
  for (std::size_t q = 0; q < n; ++q) {
    CellSet targets = reach_[q] & g;
    for (auto k = targets.find_first(); k != CellSet::npos; k = targets.find_next(k)) {
      CellSet between = reach_[q] & back_[k] & not_f;
      between.reset(k);
      if (between.none()) {
        out.set(q);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- free API

std::vector<CellId> to_cells(const CellSet& s) {
  std::vector<CellId> out;
  for (auto k = s.find_first(); k != CellSet::npos; k = s.find_next(k))
    out.push_back(CellId{static_cast<std::uint32_t>(k)});
  return out;
}

bool satisfies(const Model& m, CellId q, const Formula& f) {
  Checker c(m);
  return c.satisfies(q, f);
}

std::vector<CellId> sat_set(const Model& m, const Formula& f) {
  Checker c(m);
  return to_cells(c.sat(f));
}

bool valid_on(const Model& m, const Formula& f) {
  Checker c(m);
  return c.sat(f).all();
}

std::vector<CellId> eval_untilC(const Model& m, const Formula& f, const Formula& g) {
  Checker c(m);
  CellSet a = c.sat(f);
  return to_cells(c.until_c(a, c.sat(g)));
}

std::vector<CellId> eval_untilL(const Model& m, const Formula& f, const Formula& g) {
  Checker c(m);
  CellSet a = c.sat(f);
  CellSet b = c.sat(g);
  return to_cells(c.until_l(a, b));
}

}  // namespace hdml
