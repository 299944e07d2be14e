#include "hdml/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hdml/errors.hpp"

namespace hdml {

using nlohmann::json;

namespace {

json parse_doc(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key '") + key + "'");
  return j.at(key);
}

const json* optional_member(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

std::map<std::string, std::string> string_map(const json& j, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be an object");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = as_string(it.value(), what);
  return out;
}

// Translate the wrapped call's errors into FormatError so readers fail uniformly.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

json hda_json(const Hda& h) {
  json cells = json::array();
  json s = json::array();
  json t = json::array();
  json labels = json::object();
  json valuation = json::object();
  for (CellId q : h.cells()) {
    cells.push_back({{"id", h.name(q)}, {"dim", h.dim(q)}});
    for (int i = 1; i <= h.dim(q); ++i) {
      if (auto f = h.src(q, i)) s.push_back({h.name(q), i, h.name(*f)});
      if (auto f = h.tgt(q, i)) t.push_back({h.name(q), i, h.name(*f)});
    }
    if (const auto& l = h.edge_label(q)) labels[h.name(q)] = *l;
    if (!h.valuation(q).empty()) valuation[h.name(q)] = h.valuation(q);
  }
  json initial = json::array();
  for (CellId q : h.initial()) initial.push_back(h.name(q));
  json fin = json::array();
  for (CellId q : h.final_states()) fin.push_back(h.name(q));
  return {{"cells", cells}, {"s", s}, {"t", t}, {"labels", labels},
          {"valuation", valuation}, {"initial", initial}, {"final", fin}};
}

std::vector<std::string> cell_names(const Hda& h, const std::vector<CellId>& cs) {
  std::vector<std::string> out;
  for (CellId c : cs) out.push_back(h.name(c));
  return out;
}

}  // namespace

Hda hda_from_json(std::string_view text) {
  const json doc = parse_doc(text);
  return guarded("HDA document", [&] {
    HdaBuilder b;
    const json& cells = member(doc, "cells");
    if (!cells.is_array()) throw FormatError("'cells' must be an array");
    for (const auto& c : cells) {
      const std::string id = as_string(member(c, "id"), "cell id");
      const json& dim = member(c, "dim");
      if (!dim.is_number_integer() || dim.get<int>() < 0)
        throw FormatError("cell '" + id + "' needs a non-negative integer dim");
      b.add_cell(id, dim.get<int>());
    }
    auto cell = [&](const json& j, const char* where) {
      const std::string name = as_string(j, where);
      auto id = b.find(name);
      if (!id) throw FormatError(std::string(where) + " refers to undeclared cell '" + name + "'");
      return *id;
    };
    for (const char* key : {"s", "t"}) {
      const json* maps = optional_member(doc, key);
      if (!maps) continue;
      if (!maps->is_array()) throw FormatError(std::string("'") + key + "' must be an array");
      for (const auto& e : *maps) {
        if (!e.is_array() || e.size() != 3 || !e[1].is_number_integer())
          throw FormatError(std::string("entries of '") + key + "' must be [cell, index, cell]");
        const CellId q = cell(e[0], key);
        const CellId f = cell(e[2], key);
        if (key[0] == 's') b.set_src(q, e[1].get<int>(), f);
        else b.set_tgt(q, e[1].get<int>(), f);
      }
    }
    if (const json* labels = optional_member(doc, "labels"))
      for (const auto& [name, sym] : string_map(*labels, "labels")) b.set_label(cell(json(name), "labels"), sym);
    if (const json* val = optional_member(doc, "valuation")) {
      if (!val->is_object()) throw FormatError("'valuation' must be an object");
      for (auto it = val->begin(); it != val->end(); ++it) {
        const CellId q = cell(json(it.key()), "valuation");
        for (const auto& p : string_list(it.value(), "valuation")) b.add_prop(q, p);
      }
    }
    if (const json* init = optional_member(doc, "initial"))
      for (const auto& n : string_list(*init, "initial")) b.add_initial(cell(json(n), "initial"));
    if (const json* fin = optional_member(doc, "final"))
      for (const auto& n : string_list(*fin, "final")) b.add_final(cell(json(n), "final"));
    return b.build();
  });
}

std::string hda_to_json(const Hda& h) { return dump(hda_json(h)); }

namespace {

void require_declared(const std::set<std::string>& known, const std::string& name, const char* what) {
  if (!known.count(name)) throw FormatError(std::string(what) + " refers to undeclared '" + name + "'");
}

}  // namespace

KripkeStructure kripke_from_json(std::string_view text) {
  const json doc = parse_doc(text);
  return guarded("Kripke document", [&] {
    KripkeStructure k;
    k.states = string_list(member(doc, "states"), "states");
    if (const json* tr = optional_member(doc, "trans")) {
      if (!tr->is_array()) throw FormatError("'trans' must be an array");
      for (const auto& e : *tr) {
        if (!e.is_array() || e.size() != 3) throw FormatError("transitions must be [state, action, state]");
        k.trans.push_back({as_string(e[0], "transition"), as_string(e[1], "transition"), as_string(e[2], "transition")});
      }
    }
    if (const json* val = optional_member(doc, "valuation")) {
      if (!val->is_object()) throw FormatError("'valuation' must be an object");
      for (auto it = val->begin(); it != val->end(); ++it) k.valuation[it.key()] = string_list(it.value(), "valuation");
    }
    if (const json* init = optional_member(doc, "initial")) k.initial = string_list(*init, "initial");
    const std::set<std::string> known(k.states.begin(), k.states.end());
    for (const auto& t : k.trans) {
      require_declared(known, t.from, "transition");
      require_declared(known, t.to, "transition");
    }
    for (const auto& [st, ps] : k.valuation) require_declared(known, st, "valuation");
    for (const auto& st : k.initial) require_declared(known, st, "initial");
    return k;
  });
}

std::string kripke_to_json(const KripkeStructure& k) {
  json trans = json::array();
  for (const auto& t : k.trans) trans.push_back({t.from, t.action, t.to});
  json val = json::object();
  for (const auto& [s, ps] : k.valuation) val[s] = ps;
  return dump({{"states", k.states}, {"trans", trans}, {"valuation", val}, {"initial", k.initial}});
}

ConfigStructure configs_from_json(std::string_view text) {
  const json doc = parse_doc(text);
  return guarded("configuration document", [&] {
    ConfigStructure c;
    c.events = string_list(member(doc, "events"), "events");
    if (const json* l = optional_member(doc, "lambda")) c.lambda = string_map(*l, "lambda");
    const json& cs = member(doc, "configs");
    if (!cs.is_array()) throw FormatError("'configs' must be an array");
    for (const auto& x : cs) c.configs.push_back(string_list(x, "configs"));
    const std::set<std::string> known(c.events.begin(), c.events.end());
    for (const auto& cfg : c.configs)
      for (const auto& e : cfg) require_declared(known, e, "configuration");
    for (const auto& [e, a] : c.lambda) require_declared(known, e, "lambda");
    return c;
  });
}

std::string configs_to_json(const ConfigStructure& c) {
  json lambda(c.lambda);
  return dump({{"events", c.events}, {"lambda", lambda}, {"configs", c.configs}});
}

TraceSpec trace_from_json(std::string_view text) {
  const json doc = parse_doc(text);
  return guarded("trace document", [&] {
    TraceSpec t;
    t.alphabet = string_list(member(doc, "alphabet"), "alphabet");
    if (const json* ind = optional_member(doc, "independence")) {
      if (!ind->is_array()) throw FormatError("'independence' must be an array");
      for (const auto& p : *ind) {
        auto pair = string_list(p, "independence");
        if (pair.size() != 2) throw FormatError("independence entries must be pairs");
        t.independence.emplace(pair[0], pair[1]);
      }
    }
    const json& poset = member(doc, "poset");
    t.events = string_list(member(poset, "events"), "poset.events");
    if (const json* leq = optional_member(poset, "leq")) {
      if (!leq->is_array()) throw FormatError("'poset.leq' must be an array");
      for (const auto& p : *leq) {
        auto pair = string_list(p, "poset.leq");
        if (pair.size() != 2) throw FormatError("leq entries must be pairs");
        t.leq.emplace_back(pair[0], pair[1]);
      }
    }
    if (const json* l = optional_member(poset, "lambda")) t.lambda = string_map(*l, "poset.lambda");
    const std::set<std::string> known(t.events.begin(), t.events.end());
    for (const auto& [x, y] : t.leq) {
      require_declared(known, x, "poset.leq");
      require_declared(known, y, "poset.leq");
    }
    for (const auto& [e, a] : t.lambda) require_declared(known, e, "poset.lambda");
    return t;
  });
}

std::string trace_to_json(const TraceSpec& t) {
  json ind = json::array();
  for (const auto& [a, b] : t.independence) ind.push_back({a, b});
  json leq = json::array();
  for (const auto& [a, b] : t.leq) leq.push_back({a, b});
  json lambda(t.lambda);
  return dump({{"alphabet", t.alphabet},
               {"independence", ind},
               {"poset", {{"events", t.events}, {"leq", leq}, {"lambda", lambda}}}});
}

std::string filtration_to_json(const Hda& source, const FiltrationResult& f) {
  json doc = hda_json(f.quotient);
  json classes = json::object();
  for (CellId q : source.cells()) classes[source.name(q)] = f.quotient.name(f[q]);
  doc["classes"] = classes;
  if (!f.warnings.empty()) doc["warnings"] = f.warnings;
  return dump(doc);
}

std::string validation_to_json(const Hda& h, const ValidationReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    std::vector<std::string> cells;
    for (CellId c : v.cells)
      if (h.contains(c)) cells.push_back(h.name(c));
    vs.push_back({{"kind", std::string(to_string(v.kind))}, {"message", v.message}, {"cells", cells}});
  }
  return dump({{"valid", r.ok()}, {"violations", vs}});
}

std::string trace_axioms_to_json(const TraceAxiomReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return dump({{"ok", r.ok()}, {"checks", checks}});
}

std::string suite_to_json(const SuiteReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"schema", f.schema}, {"instance", to_string(f.instance)}, {"model", f.model},
                     {"cell", f.cell.value}});
  json per(r.instances_per_schema);
  return dump({{"ok", r.ok()},
               {"models", r.models},
               {"instances", r.instances},
               {"checks", r.checks},
               {"instances_per_schema", per},
               {"failures", fails}});
}

std::string compactness_to_json(const CompactnessReport& r) {
  json wit = json::array();
  for (const auto& w : r.witness) wit.push_back(w ? json(r.cube.name(*w)) : json(nullptr));
  return dump({{"m", r.m}, {"ok", r.ok()}, {"cells", r.cube.size()}, {"witness", wit},
               {"beyond", cell_names(r.cube, r.beyond)}});
}

std::string size_bound_to_json(const SizeBound& b) {
  json doc{{"n", b.n}, {"phi_size", b.phi_size}, {"N", b.N.str()}, {"exponent", b.exponent.str()}};
  doc["bound"] = b.bound ? json(b.bound->str()) : json(nullptr);
  return dump(doc);
}

std::string split_lts_to_json(const Hda& h, const SplitLts& l) {
  json edges = json::array();
  for (const auto& e : l.edges) edges.push_back({h.name(e.from), to_string(e.label), h.name(e.to)});
  return dump({{"start", h.name(l.start)}, {"states", cell_names(h, l.states)}, {"edges", edges}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
}

}  // namespace hdml
