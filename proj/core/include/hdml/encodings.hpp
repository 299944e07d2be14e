#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdml/formula.hpp"
#include "hdml/hda.hpp"

namespace hdml {

struct KripkeStructure {
  struct Transition {
    std::string from;
    std::string action;
    std::string to;
  };
  std::vector<std::string> states;
  std::vector<Transition> trans;
  std::map<std::string, std::vector<std::string>> valuation;
  std::vector<std::string> initial;
};

// States become 0-cells, transitions become edges. Edge ids are
// "<from>-<action>-><to>", suffixed with "#k" for parallel transitions.
Hda kripke_to_hda(const KripkeStructure& k);
bool is_kripke_hda(const Hda& h);

// The full cube 3^E. Cell names spell the status of each event in list
// order: '0' not started, 'x' executing, '1' terminated.
Hda hypercube(const std::vector<std::string>& events,
              const std::map<std::string, std::string>& lambda = {});

struct ConfigStructure {
  std::vector<std::string> events;
  std::map<std::string, std::string> lambda;
  std::vector<std::vector<std::string>> configs;
};

// Keeps exactly the cells of 3^E all of whose vertices are configurations.
Hda configs_to_hda(const ConfigStructure& c);

using EventPair = std::pair<std::string, std::string>;

struct EventRelations {
  std::set<EventPair> leq;       // reflexive
  std::set<EventPair> conflict;  // symmetric
};

EventRelations events_order_and_conflict(const ConfigStructure& c);

using Dependence = std::set<std::pair<std::string, std::string>>;

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // first counterexample when failed
};

struct TraceAxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
  const AxiomCheck* find(const std::string& prefix) const;
};

// Validity of the empty-conflict, determinism, nice-labeling and
// dependence formulas on h. When the event presentation is known, the
// structural conditions on (E, <=, #, lambda) are checked as well.
TraceAxiomReport check_trace_axioms(const Hda& h, const Dependence& dependence,
                                    const ConfigStructure* events = nullptr);

struct TraceSpec {
  std::vector<std::string> alphabet;
  std::set<std::pair<std::string, std::string>> independence;
  std::vector<std::string> events;
  std::vector<EventPair> leq;  // generating pairs; closed reflexively and transitively
  std::map<std::string, std::string> lambda;
};

Dependence dependence_of(const TraceSpec& t);
// Throws WellFormednessError naming witnessing events.
void check_trace_spec(const TraceSpec& t);
ConfigStructure trace_configurations(const TraceSpec& t);
Hda trace_to_hda(const TraceSpec& t);

}  // namespace hdml
