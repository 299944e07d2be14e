#include "hdml/encodings.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "cube.hpp"
#include "hdml/errors.hpp"
#include "hdml/semantics.hpp"

namespace hdml {

using detail::CubeCell;

// ---------------------------------------------------------------- Kripke

Hda kripke_to_hda(const KripkeStructure& k) {
  HdaBuilder b;
  for (const auto& s : k.states) {
    if (b.find(s)) throw WellFormednessError("duplicate Kripke state '" + s + "'");
    b.add_cell(s, 0);
  }
  auto state = [&](const std::string& s) {
    auto id = b.find(s);
    if (!id || b.dim(*id) != 0) throw WellFormednessError("unknown Kripke state '" + s + "'");
    return *id;
  };
  for (const auto& [s, props] : k.valuation) {
    CellId q = state(s);
    for (const auto& p : props) b.add_prop(q, p);
  }
  std::map<std::string, int> seen;
  for (const auto& tr : k.trans) {
    CellId from = state(tr.from);
    CellId to = state(tr.to);
    std::string name = tr.from + "-" + tr.action + "->" + tr.to;
    const int n = seen[name]++;
    if (n > 0) name += "#" + std::to_string(n);
    while (b.find(name)) name += "'";
    CellId e = b.add_cell(name, 1);
    b.set_src(e, 1, from).set_tgt(e, 1, to).set_label(e, tr.action);
  }
  for (const auto& s : k.initial) b.add_initial(state(s));
  return b.build();
}

bool is_kripke_hda(const Hda& h) { return h.max_dim() <= 1; }

// ---------------------------------------------------------------- cubes

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t e) { return Mask{1} << e; }

// Assembles an HDA from a face-closed set of cube cells.
Hda from_cube_cells(const std::vector<std::string>& events,
                    const std::map<std::string, std::string>& lambda,
                    std::vector<CubeCell> cells) {
  std::sort(cells.begin(), cells.end(), [](const CubeCell& a, const CubeCell& b) {
    const int da = detail::cube_dim(a);
    const int db = detail::cube_dim(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  HdaBuilder b;
  std::map<CubeCell, CellId> ids;
  for (const auto& v : cells) ids.emplace(v, b.add_cell(detail::cube_name(v), detail::cube_dim(v)));
  for (const auto& v : cells) {
    CellId q = ids.at(v);
    const int n = detail::cube_dim(v);
    for (int i = 1; i <= n; ++i) {
      b.set_src(q, i, ids.at(detail::cube_face(v, i, true)));
      b.set_tgt(q, i, ids.at(detail::cube_face(v, i, false)));
    }
    if (n == 1) {
      auto it = lambda.find(events[detail::running_event(v, 1)]);
      if (it != lambda.end()) b.set_label(q, it->second);
    }
  }
  CubeCell origin(events.size(), detail::kIdle);
  if (auto it = ids.find(origin); it != ids.end()) b.add_initial(it->second);
  Hda h = b.build();
  for (CellId q : h.level(0))
    if (h.s_cofaces(q).empty()) b.add_final(q);
  return b.build();
}

std::size_t event_index(const std::vector<std::string>& events, const std::string& e) {
  auto it = std::find(events.begin(), events.end(), e);
  if (it == events.end()) throw WellFormednessError("unknown event '" + e + "'");
  return static_cast<std::size_t>(it - events.begin());
}

void check_events(const std::vector<std::string>& events) {
  if (events.size() > 63) throw WellFormednessError("at most 63 events are supported");
  std::set<std::string> uniq(events.begin(), events.end());
  if (uniq.size() != events.size()) throw WellFormednessError("duplicate event names");
}

std::set<Mask> config_masks(const ConfigStructure& c) {
  std::set<Mask> out;
  for (const auto& conf : c.configs) {
    Mask m = 0;
    for (const auto& e : conf) m |= bit(event_index(c.events, e));
    out.insert(m);
  }
  return out;
}

}  // namespace

Hda hypercube(const std::vector<std::string>& events, const std::map<std::string, std::string>& lambda) {
  check_events(events);
  if (events.size() > 12) throw WellFormednessError("hypercube limited to 12 events");
  const std::size_t total = detail::cube_size(events.size());
  std::vector<CubeCell> cells;
  cells.reserve(total);
  for (std::size_t code = 0; code < total; ++code) cells.push_back(detail::cube_decode(code, events.size()));
  return from_cube_cells(events, lambda, std::move(cells));
}

Hda configs_to_hda(const ConfigStructure& c) {
  check_events(c.events);
  const std::set<Mask> configs = config_masks(c);
  if (!configs.count(0)) throw WellFormednessError("the empty configuration is missing");
  const std::size_t n = c.events.size();

  std::vector<CubeCell> cells;
  // A cell (C, X) is kept iff C u Y is a configuration for every Y within X.
  std::function<void(Mask, Mask, std::size_t)> grow = [&](Mask conf, Mask running, std::size_t next) {
    CubeCell v(n, detail::kIdle);
    for (std::size_t e = 0; e < n; ++e) {
      if (conf & bit(e)) v[e] = detail::kDone;
      else if (running & bit(e)) v[e] = detail::kRunning;
    }
    cells.push_back(std::move(v));
    for (std::size_t e = next; e < n; ++e) {
      if ((conf | running) & bit(e)) continue;
      bool ok = true;
      // Subsets Y of `running`, each extended by e.
      for (Mask y = running;; y = (y - 1) & running) {
        if (!configs.count(conf | y | bit(e))) {
          ok = false;
          break;
        }
        if (y == 0) break;
      }
      if (ok) grow(conf, running | bit(e), e + 1);
    }
  };
  for (Mask conf : configs) grow(conf, 0, 0);
  return from_cube_cells(c.events, c.lambda, std::move(cells));
}

EventRelations events_order_and_conflict(const ConfigStructure& c) {
  check_events(c.events);
  const std::set<Mask> configs = config_masks(c);
  EventRelations r;
  const std::size_t n = c.events.size();
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t f = 0; f < n; ++f) {
      bool below = true;
      bool together = false;
      for (Mask m : configs) {
        if ((m & bit(f)) && !(m & bit(e))) below = false;
        if ((m & bit(e)) && (m & bit(f))) together = true;
      }
      if (below) r.leq.emplace(c.events[e], c.events[f]);
      if (e != f && !together) r.conflict.emplace(c.events[e], c.events[f]);
    }
  }
  return r;
}

// ---------------------------------------------------------------- trace axioms

bool TraceAxiomReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* TraceAxiomReport::find(const std::string& prefix) const {
  for (const auto& c : checks)
    if (c.name.compare(0, prefix.size(), prefix) == 0) return &c;
  return nullptr;
}

namespace {

class ValidityProbe {
 public:
  explicit ValidityProbe(const Hda& h) : model_(h), checker_(model_) {}

  AxiomCheck check(std::string name, const Formula& f) {
    AxiomCheck out{std::move(name), true, ""};
    const CellSet& s = checker_.sat(f);
    if (!s.all()) {
      out.passed = false;
      std::size_t bad = 0;
      while (s.test(bad)) ++bad;
      out.detail = "fails at '" + model_.hda().name(CellId{static_cast<std::uint32_t>(bad)}) +
                   "': " + to_string(f);
    }
    return out;
  }

 private:
  Model model_;
  Checker checker_;
};

void fold(std::vector<AxiomCheck>& into, const std::string& name, const std::vector<AxiomCheck>& parts) {
  AxiomCheck agg{name, true, ""};
  for (const auto& p : parts) {
    if (!p.passed) {
      agg.passed = false;
      agg.detail = p.detail;
      break;
    }
  }
  into.push_back(agg);
}

}  // namespace

TraceAxiomReport check_trace_axioms(const Hda& h, const Dependence& dependence,
                                    const ConfigStructure* events) {
  TraceAxiomReport report;
  ValidityProbe probe(h);
  const auto sigma = h.actions();
  const Formula tt = top();

  std::vector<AxiomCheck> parts;
  for (const auto& a : sigma) {
    for (const auto& b : sigma) {
      if (a >= b) continue;
      Formula both = conj(Formula::during_l(a, tt), Formula::during_l(b, tt));
      Formula square = conj(Formula::during_l(a, Formula::during_l(b, tt)),
                            Formula::during_l(b, Formula::during_l(a, tt)));
      parts.push_back(probe.check("empty-conflict", Formula::implies(both, square)));
    }
  }
  fold(report.checks, "empty-conflict", parts);

  // Determinism is a schema; the pool covers the local shapes that tell two
  // a-successors apart.
  std::vector<Formula> pool = {tt, Formula::bottom()};
  for (const auto& p : h.props()) {
    pool.push_back(Formula::prop(p));
    pool.push_back(neg(Formula::prop(p)));
  }
  for (const auto& b : sigma) {
    pool.push_back(Formula::during_l(b, tt));
    pool.push_back(Formula::after_l(b, tt));
    pool.push_back(neg(Formula::during_l(b, tt)));
    pool.push_back(Formula::after_l(b, Formula::during_l(b, tt)));
  }
  parts.clear();
  for (const auto& a : sigma)
    for (const auto& phi : pool)
      parts.push_back(probe.check("determinism",
                                  Formula::implies(Formula::during_l(a, phi), box_during_l(a, phi))));
  fold(report.checks, "determinism", parts);

  parts.clear();
  for (const auto& a : sigma)
    parts.push_back(probe.check("nice-labeling", Formula::implies(Formula::after_l(a, tt),
                                                                   neg(Formula::during_l(a, tt)))));
  fold(report.checks, "nice-labeling", parts);

  parts.clear();
  for (const auto& [a, b] : dependence)
    parts.push_back(probe.check("dependence", Formula::implies(Formula::after_l(a, tt),
                                                                neg(Formula::during_l(b, tt)))));
  fold(report.checks, "dependence", parts);

  if (events) {
    const EventRelations rel = events_order_and_conflict(*events);
    auto leq = [&](const std::string& x, const std::string& y) { return rel.leq.count({x, y}) > 0; };
    AxiomCheck conflict{"structural: empty conflict", rel.conflict.empty(), ""};
    if (!conflict.passed)
      conflict.detail = rel.conflict.begin()->first + " # " + rel.conflict.begin()->second;
    report.checks.push_back(conflict);

    auto label = [&](const std::string& e) {
      auto it = events->lambda.find(e);
      return it == events->lambda.end() ? std::string() : it->second;
    };
    AxiomCheck nice{"structural: nice labeling", true, ""};
    for (const auto& e : events->events)
      for (const auto& f : events->events)
        if (e < f && label(e) == label(f) && !leq(e, f) && !leq(f, e)) {
          nice.passed = false;
          nice.detail = e + " and " + f + " share a label but are unordered";
        }
    report.checks.push_back(nice);

    // co: neither ordered nor in conflict; covering pairs of the order.
    auto concurrent = [&](const std::string& e, const std::string& f) {
      return e != f && !leq(e, f) && !leq(f, e) && !rel.conflict.count({e, f});
    };
    auto covers = [&](const std::string& e, const std::string& f) {
      if (e == f || !leq(e, f)) return false;
      for (const auto& g : events->events)
        if (g != e && g != f && leq(e, g) && leq(g, f)) return false;
      return true;
    };
    AxiomCheck ctx{"structural: context-independence", true, ""};
    std::set<std::pair<std::string, std::string>> co_labels;
    for (const auto& e : events->events)
      for (const auto& f : events->events)
        if (concurrent(e, f)) co_labels.emplace(label(e), label(f));
    for (const auto& e : events->events)
      for (const auto& f : events->events)
        if (covers(e, f) && co_labels.count({label(e), label(f)})) {
          ctx.passed = false;
          ctx.detail = e + " is covered by " + f + " although their labels occur concurrently";
        }
    report.checks.push_back(ctx);
  }
  return report;
}

// ---------------------------------------------------------------- traces

Dependence dependence_of(const TraceSpec& t) {
  Dependence d;
  for (const auto& a : t.alphabet)
    for (const auto& b : t.alphabet)
      if (!t.independence.count({a, b})) d.emplace(a, b);
  return d;
}

namespace {

// Reflexive-transitive closure of the generating pairs, as a matrix.
std::vector<std::vector<bool>> order_matrix(const TraceSpec& t) {
  const std::size_t n = t.events.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t e = 0; e < n; ++e) le[e][e] = true;
  for (const auto& [x, y] : t.leq) le[event_index(t.events, x)][event_index(t.events, y)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  return le;
}

}  // namespace

void check_trace_spec(const TraceSpec& t) {
  check_events(t.events);
  const std::set<std::string> sigma(t.alphabet.begin(), t.alphabet.end());
  for (const auto& [a, b] : t.independence) {
    if (!sigma.count(a) || !sigma.count(b))
      throw WellFormednessError("independence pair (" + a + "," + b + ") outside the alphabet");
    if (a == b) throw WellFormednessError("independence is not irreflexive at " + a);
    if (!t.independence.count({b, a}))
      throw WellFormednessError("independence is not symmetric at (" + a + "," + b + ")");
  }
  for (const auto& e : t.events) {
    auto it = t.lambda.find(e);
    if (it == t.lambda.end()) throw WellFormednessError("event '" + e + "' has no label");
    if (!sigma.count(it->second))
      throw WellFormednessError("event '" + e + "' is labeled outside the alphabet");
  }
  const auto le = order_matrix(t);
  const std::size_t n = t.events.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i])
        throw WellFormednessError("order is not antisymmetric: " + t.events[i] + " and " + t.events[j]);

  auto dependent = [&](std::size_t i, std::size_t j) {
    return !t.independence.count({t.lambda.at(t.events[i]), t.lambda.at(t.events[j])});
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool covering = le[i][j];
      for (std::size_t k = 0; k < n && covering; ++k)
        if (k != i && k != j && le[i][k] && le[k][j]) covering = false;
      if (covering && !dependent(i, j))
        throw WellFormednessError("covering pair " + t.events[i] + " < " + t.events[j] +
                                  " has independent labels");
      if (dependent(i, j) && !le[i][j] && !le[j][i])
        throw WellFormednessError("events " + t.events[i] + " and " + t.events[j] +
                                  " have dependent labels but are unordered");
    }
  }
}

ConfigStructure trace_configurations(const TraceSpec& t) {
  check_trace_spec(t);
  const auto le = order_matrix(t);
  const std::size_t n = t.events.size();
  std::vector<Mask> below(n, 0);  // strict predecessors
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && le[j][i]) below[i] |= bit(j);

  std::set<Mask> seen{0};
  std::deque<Mask> work{0};
  while (!work.empty()) {
    Mask c = work.front();
    work.pop_front();
    for (std::size_t e = 0; e < n; ++e) {
      if ((c & bit(e)) || (below[e] & ~c)) continue;
      Mask d = c | bit(e);
      if (seen.insert(d).second) work.push_back(d);
    }
  }
  ConfigStructure out;
  out.events = t.events;
  out.lambda = t.lambda;
  for (Mask m : seen) {
    std::vector<std::string> conf;
    for (std::size_t e = 0; e < n; ++e)
      if (m & bit(e)) conf.push_back(t.events[e]);
    out.configs.push_back(std::move(conf));
  }
  return out;
}

Hda trace_to_hda(const TraceSpec& t) { return configs_to_hda(trace_configurations(t)); }

}  // namespace hdml
