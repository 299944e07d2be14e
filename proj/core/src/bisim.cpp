#include "hdml/bisim.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "hdml/errors.hpp"
#include "hdml/semantics.hpp"

namespace hdml {

std::string to_string(const SplitSymbol& s) { return s.action + (s.sign == Sign::Plus ? "+" : "-"); }

std::string_view to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Bisimilar: return "bisimilar";
    case OracleVerdict::NotBisimilar: return "not-bisimilar";
    case OracleVerdict::DepthExhausted: return "depth-exhausted";
  }
  return "?";
}

SplitSymbol split_label(const Hda& h, const SimpleStep& step) {
  const CellId big = step.kind == StepKind::Start ? step.to : step.from;
  const CellId small = step.kind == StepKind::Start ? step.from : step.to;
  const auto lb = cell_label(h, big);
  const auto ls = cell_label(h, small);
  std::vector<std::string> diff;
  std::set_difference(lb.begin(), lb.end(), ls.begin(), ls.end(), std::back_inserter(diff));
  if (diff.size() != 1 || lb.size() != ls.size() + 1)
    throw WellFormednessError("step between '" + h.name(step.from) + "' and '" + h.name(step.to) +
                              "' does not change the label multiset by exactly one action");
  return SplitSymbol{diff.front(), step.kind == StepKind::Start ? Sign::Plus : Sign::Minus};
}

SplitTrace split_trace(const Hda& h, const Path& path) {
  SplitTrace out;
  for (const auto& st : path.steps) out.push_back(split_label(h, st));
  return out;
}

SplitLts split_lts(const Hda& h, CellId q0) {
  SplitLts lts;
  lts.start = q0;
  lts.states = reachable(h, q0);
  for (CellId q : lts.states)
    for (const auto& st : simple_steps(h, q)) lts.edges.push_back({q, split_label(h, st), st.to});
  std::sort(lts.edges.begin(), lts.edges.end());
  lts.edges.erase(std::unique(lts.edges.begin(), lts.edges.end()), lts.edges.end());
  return lts;
}

namespace {

// Disjoint union of two split LTSs with dense state and label numbering.
struct UnionLts {
  std::vector<SplitSymbol> labels;                       // sorted
  std::vector<std::vector<std::pair<int, int>>> succ;    // (label, target), sorted
  std::vector<std::vector<std::pair<int, int>>> pred;    // (label, source)
  int start_a = 0;
  int start_b = 0;
};

UnionLts make_union(const Hda& a, CellId qa, const Hda& b, CellId qb) {
  const SplitLts la = split_lts(a, qa);
  const SplitLts lb = split_lts(b, qb);
  UnionLts u;
  std::set<SplitSymbol> syms;
  for (const auto& e : la.edges) syms.insert(e.label);
  for (const auto& e : lb.edges) syms.insert(e.label);
  u.labels.assign(syms.begin(), syms.end());
  auto label_id = [&](const SplitSymbol& s) {
    return static_cast<int>(std::lower_bound(u.labels.begin(), u.labels.end(), s) - u.labels.begin());
  };
  std::map<std::pair<int, std::uint32_t>, int> id;
  auto add = [&](const SplitLts& l, int side) {
    for (CellId q : l.states) id.emplace(std::pair{side, q.value}, static_cast<int>(id.size()));
  };
  add(la, 0);
  add(lb, 1);
  u.succ.resize(id.size());
  u.pred.resize(id.size());
  auto edges = [&](const SplitLts& l, int side) {
    for (const auto& e : l.edges) {
      const int from = id.at({side, e.from.value});
      const int to = id.at({side, e.to.value});
      u.succ[static_cast<std::size_t>(from)].emplace_back(label_id(e.label), to);
      u.pred[static_cast<std::size_t>(to)].emplace_back(label_id(e.label), from);
    }
  };
  edges(la, 0);
  edges(lb, 1);
  for (auto& s : u.succ) std::sort(s.begin(), s.end());
  u.start_a = id.at({0, qa.value});
  u.start_b = id.at({1, qb.value});
  return u;
}

// Splitter-queue refinement to the coarsest stable partition.
std::vector<int> coarsest_partition(const UnionLts& u) {
  const std::size_t n = u.succ.size();
  std::vector<int> block(n, 0);
  std::vector<std::vector<int>> members(1);
  for (std::size_t s = 0; s < n; ++s) members[0].push_back(static_cast<int>(s));
  std::deque<int> queue{0};
  std::vector<bool> queued{true};
  auto enqueue = [&](int b) {
    if (!queued[static_cast<std::size_t>(b)]) {
      queued[static_cast<std::size_t>(b)] = true;
      queue.push_back(b);
    }
  };
  std::vector<int> mark(n, -1);
  int stamp = 0;
  while (!queue.empty()) {
    const int splitter = queue.front();
    queue.pop_front();
    queued[static_cast<std::size_t>(splitter)] = false;
    const std::vector<int> target = members[static_cast<std::size_t>(splitter)];
    for (int l = 0; l < static_cast<int>(u.labels.size()); ++l) {
      ++stamp;
      std::map<int, std::vector<int>> touched;  // block -> marked members
      for (int t : target)
        for (const auto& [lab, s] : u.pred[static_cast<std::size_t>(t)])
          if (lab == l && mark[static_cast<std::size_t>(s)] != stamp) {
            mark[static_cast<std::size_t>(s)] = stamp;
            touched[block[static_cast<std::size_t>(s)]].push_back(s);
          }
      for (auto& [x, marked] : touched) {
        auto& xs = members[static_cast<std::size_t>(x)];
        if (marked.size() == xs.size()) continue;
        std::sort(marked.begin(), marked.end());
        std::vector<int> rest;
        std::set_difference(xs.begin(), xs.end(), marked.begin(), marked.end(), std::back_inserter(rest));
        const int y = static_cast<int>(members.size());
        for (int s : marked) block[static_cast<std::size_t>(s)] = y;
        xs = std::move(rest);
        members.push_back(std::move(marked));
        queued.push_back(false);
        enqueue(x);
        enqueue(y);
      }
    }
  }
  return block;
}

Formula step_modality(const SplitSymbol& s, Formula f) {
  return s.sign == Sign::Plus ? Formula::during_l(s.action, std::move(f))
                              : Formula::after_l(s.action, std::move(f));
}

// Round-indexed signature refinement. rounds[r][s] is the class of s after r
// rounds; the last entry is stable.
std::vector<std::vector<int>> refinement_rounds(const UnionLts& u) {
  std::vector<std::vector<int>> rounds{std::vector<int>(u.succ.size(), 0)};
  std::size_t classes = 1;
  while (true) {
    const auto& prev = rounds.back();
    std::map<std::pair<int, std::set<std::pair<int, int>>>, int> ids;
    std::vector<int> next(u.succ.size());
    for (std::size_t s = 0; s < u.succ.size(); ++s) {
      std::set<std::pair<int, int>> sig;
      for (const auto& [l, t] : u.succ[s]) sig.emplace(l, prev[static_cast<std::size_t>(t)]);
      auto [it, _] = ids.emplace(std::pair{prev[s], std::move(sig)}, static_cast<int>(ids.size()));
      next[s] = it->second;
    }
    if (ids.size() == classes) break;
    classes = ids.size();
    rounds.push_back(std::move(next));
  }
  return rounds;
}

class Distinguisher {
 public:
  Distinguisher(const UnionLts& u, const std::vector<std::vector<int>>& rounds) : u_(u), rounds_(rounds) {}

  // Formula true at s and false at t; requires s, t apart in the last round.
  Formula apart(int s, int t) {
    if (auto it = memo_.find({s, t}); it != memo_.end()) return it->second;
    const std::size_t r = first_round_apart(s, t);
    const auto& prev = rounds_[r - 1];
    std::optional<Formula> out;
    for (const auto& [l, s2] : u_.succ[static_cast<std::size_t>(s)]) {
      std::vector<int> rivals;
      bool matched = false;
      for (const auto& [l2, t2] : u_.succ[static_cast<std::size_t>(t)]) {
        if (l2 != l) continue;
        if (prev[static_cast<std::size_t>(t2)] == prev[static_cast<std::size_t>(s2)]) {
          matched = true;
          break;
        }
        rivals.push_back(t2);
      }
      if (matched) continue;
      std::set<Formula> parts;
      for (int t2 : rivals) parts.insert(apart(s2, t2));
      out = step_modality(u_.labels[static_cast<std::size_t>(l)],
                          conj_all(std::vector<Formula>(parts.begin(), parts.end())));
      break;
    }
    if (!out) out = neg(apart(t, s));
    memo_.emplace(std::pair{s, t}, *out);
    return *out;
  }

 private:
  std::size_t first_round_apart(int s, int t) const {
    for (std::size_t r = 1; r < rounds_.size(); ++r)
      if (rounds_[r][static_cast<std::size_t>(s)] != rounds_[r][static_cast<std::size_t>(t)]) return r;
    throw std::logic_error("states are not separated by refinement");
  }

  const UnionLts& u_;
  const std::vector<std::vector<int>>& rounds_;
  std::map<std::pair<int, int>, Formula> memo_;
};

enum class Tri : std::uint8_t { No, Unknown, Yes };

class PathOracle {
 public:
  PathOracle(const Hda& a, const Hda& b) : a_(a), b_(b) {}

  Tri related(const Path& pa, const Path& pb, int budget) {
    if (split_trace(a_, pa) != split_trace(b_, pb)) return Tri::No;
    const auto sa = simple_steps(a_, pa.end());
    const auto sb = simple_steps(b_, pb.end());
    if (budget == 0) return sa.empty() && sb.empty() ? Tri::Yes : Tri::Unknown;
    Tri forth = all_matched(pa, sa, pb, sb, budget, false);
    if (forth == Tri::No) return Tri::No;
    Tri back = all_matched(pb, sb, pa, sa, budget, true);
    return std::min(forth, back);
  }

 private:
  // Every one-step extension of `lead` has a partner extension of `follow`.
  Tri all_matched(const Path& lead, const std::vector<SimpleStep>& ls, const Path& follow,
                  const std::vector<SimpleStep>& fs, int budget, bool swapped) {
    const Hda& lh = swapped ? b_ : a_;
    const Hda& fh = swapped ? a_ : b_;
    Tri all = Tri::Yes;
    for (const auto& x : ls) {
      const SplitSymbol sym = split_label(lh, x);
      Path lead2 = lead;
      lead2.steps.push_back(x);
      Tri some = Tri::No;
      for (const auto& y : fs) {
        if (split_label(fh, y) != sym) continue;
        Path follow2 = follow;
        follow2.steps.push_back(y);
        Tri r = swapped ? related(follow2, lead2, budget - 1) : related(lead2, follow2, budget - 1);
        some = std::max(some, r);
        if (some == Tri::Yes) break;
      }
      all = std::min(all, some);
      if (all == Tri::No) break;
    }
    return all;
  }

  const Hda& a_;
  const Hda& b_;
};

}  // namespace

bool split_bisimilar(const Hda& a, CellId qa, const Hda& b, CellId qb) {
  const UnionLts u = make_union(a, qa, b, qb);
  const auto block = coarsest_partition(u);
  return block[static_cast<std::size_t>(u.start_a)] == block[static_cast<std::size_t>(u.start_b)];
}

OracleVerdict path_bisim_oracle(const Hda& a, CellId qa, const Hda& b, CellId qb, int depth) {
  a.require(qa);
  b.require(qb);
  PathOracle oracle(a, b);
  switch (oracle.related(Path{qa, {}}, Path{qb, {}}, std::max(depth, 0))) {
    case Tri::Yes: return OracleVerdict::Bisimilar;
    case Tri::No: return OracleVerdict::NotBisimilar;
    case Tri::Unknown: break;
  }
  return OracleVerdict::DepthExhausted;
}

std::vector<Formula> modal_pool(const std::vector<std::string>& actions, int depth, std::size_t max_size) {
  std::set<SplitSymbol> syms;
  for (const auto& x : actions) {
    syms.insert({x, Sign::Plus});
    syms.insert({x, Sign::Minus});
  }
  std::set<Formula> pool{top()};
  std::vector<Formula> level{top()};
  auto check = [&](std::size_t extra) {
    if (pool.size() + extra > max_size)
      throw BudgetError("modal pool exceeds " + std::to_string(max_size) + " formulas");
  };
  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> fresh;
    for (const auto& s : syms)
      for (const auto& chi : level) fresh.push_back(step_modality(s, chi));
    check(fresh.size() * (fresh.size() + 3) / 2);
    std::vector<Formula> next(pool.begin(), pool.end());
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      next.push_back(fresh[i]);
      next.push_back(neg(fresh[i]));
      for (std::size_t j = i + 1; j < fresh.size(); ++j) next.push_back(conj(fresh[i], fresh[j]));
    }
    pool.insert(next.begin(), next.end());
    level.assign(pool.begin(), pool.end());
  }
  return {pool.begin(), pool.end()};
}

bool modal_equiv(const Hda& a, CellId qa, const Hda& b, CellId qb, const std::vector<Formula>& pool) {
  Checker ca{Model(a)};
  Checker cb{Model(b)};
  return std::all_of(pool.begin(), pool.end(),
                     [&](const Formula& f) { return ca.satisfies(qa, f) == cb.satisfies(qb, f); });
}

bool modal_equiv(const Hda& a, CellId qa, const Hda& b, CellId qb, int depth, std::size_t max_size) {
  std::set<std::string> acts = a.actions();
  const auto more = b.actions();
  acts.insert(more.begin(), more.end());
  return modal_equiv(a, qa, b, qb, modal_pool({acts.begin(), acts.end()}, depth, max_size));
}

std::optional<Formula> distinguishing_formula(const Hda& a, CellId qa, const Hda& b, CellId qb) {
  const UnionLts u = make_union(a, qa, b, qb);
  const auto rounds = refinement_rounds(u);
  const auto& last = rounds.back();
  if (last[static_cast<std::size_t>(u.start_a)] == last[static_cast<std::size_t>(u.start_b)]) return std::nullopt;
  Distinguisher d(u, rounds);
  Formula f = d.apart(u.start_a, u.start_b);
  if (!satisfies(Model(a), qa, f) || satisfies(Model(b), qb, f))
    throw std::logic_error("extracted formula does not separate the two cells: " + to_string(f));
  return f;
}

}  // namespace hdml
