#pragma once

#include <string>
#include <string_view>

#include "hdml/axioms.hpp"
#include "hdml/bisim.hpp"
#include "hdml/encodings.hpp"
#include "hdml/filtration.hpp"
#include "hdml/hda.hpp"

namespace hdml {

// All readers throw FormatError on malformed documents or references to
// undeclared cells, states or events. Writers emit indented JSON with a
// trailing newline.

Hda hda_from_json(std::string_view text);
std::string hda_to_json(const Hda& h);

KripkeStructure kripke_from_json(std::string_view text);
std::string kripke_to_json(const KripkeStructure& k);

ConfigStructure configs_from_json(std::string_view text);
std::string configs_to_json(const ConfigStructure& c);

TraceSpec trace_from_json(std::string_view text);
std::string trace_to_json(const TraceSpec& t);

// The quotient as an HDA document with an extra "classes" object mapping
// every source cell name to the name of its class in the quotient.
std::string filtration_to_json(const Hda& source, const FiltrationResult& f);

std::string validation_to_json(const Hda& h, const ValidationReport& r);
std::string trace_axioms_to_json(const TraceAxiomReport& r);
std::string suite_to_json(const SuiteReport& r);
std::string compactness_to_json(const CompactnessReport& r);
std::string size_bound_to_json(const SizeBound& b);
std::string split_lts_to_json(const Hda& h, const SplitLts& l);

std::string read_file(const std::string& path);  // throws FormatError
void write_file(const std::string& path, std::string_view content);

}  // namespace hdml
