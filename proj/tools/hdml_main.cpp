// hdml: command-line front end. Exit status 0 means success or "true",
// 1 means "false" / "not bisimilar" / a failed check, 2 means bad usage or
// bad input data.

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdml/axioms.hpp"
#include "hdml/bisim.hpp"
#include "hdml/encodings.hpp"
#include "hdml/errors.hpp"
#include "hdml/filtration.hpp"
#include "hdml/formula.hpp"
#include "hdml/io.hpp"
#include "hdml/semantics.hpp"

namespace {

using namespace hdml;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::string model, model_b, cell, cell_b, formula, input, output, corpus, deps;
  std::string cells_per_level = "8,12,6", alphabet = "a,b", props = "p,q";
  int n = 0, phi_size = 1, pool_depth = 2, i_max = 3, max_dim = 2, m = 3, models = 100, depth = -1;
  std::uint64_t seed = 0;
  bool seed_given = false, theorems = false, distinguish = false, oracle = false;
};

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

Hda load_model(const std::string& path) { return hda_from_json(read_file(path)); }

CellId cell_of(const Hda& h, const std::string& name) {
  if (name.empty()) {
    if (!h.initial().empty()) return h.initial().front();
    throw DataError("no cell given and the model has no initial state");
  }
  return h.at(name);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) std::cout << text;
  else write_file(o.output, text);
}

int cmd_validate(const Options& o) {
  const Hda h = load_model(o.model);
  const auto report = validate(h);
  if (o.json) {
    std::cout << validation_to_json(h, report);
  } else if (report.ok()) {
    std::cout << "valid (" << h.size() << " cells)\n";
  } else {
    for (const auto& v : report.violations) std::cout << to_string(v.kind) << ": " << v.message << "\n";
  }
  return report.ok() ? kOk : kUsage;
}

int cmd_check(const Options& o) {
  Model m(load_model(o.model));
  const Formula f = parse(o.formula, m.vocabulary());
  const bool holds = satisfies(m, cell_of(m.hda(), o.cell), f);
  if (o.json) std::cout << json{{"formula", to_string(f)}, {"cell", o.cell}, {"holds", holds}}.dump(2) << "\n";
  else std::cout << (holds ? "true" : "false") << "\n";
  return holds ? kOk : kFalse;
}

int cmd_satset(const Options& o) {
  Model m(load_model(o.model));
  const Formula f = parse(o.formula, m.vocabulary());
  std::vector<std::string> names;
  for (CellId q : sat_set(m, f)) names.push_back(m.hda().name(q));
  if (o.json) {
    std::cout << json{{"formula", to_string(f)}, {"cells", names}}.dump(2) << "\n";
  } else {
    for (const auto& n : names) std::cout << n << "\n";
  }
  return kOk;
}

int cmd_filtrate(const Options& o) {
  Model m(load_model(o.model));
  const Formula f = parse(o.formula, m.vocabulary());
  const auto result = filtrate(m, f);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  emit(o, filtration_to_json(m.hda(), result));
  if (!o.output.empty() && !o.json)
    std::cout << m.hda().size() << " cells -> " << result.quotient.size() << " classes\n";
  return kOk;
}

int cmd_bounds(const Options& o) {
  if (o.n < 0 || o.phi_size < 1) throw DataError("need -n >= 0 and --phi-size >= 1");
  const SizeBound b = size_bound(o.n, o.phi_size);
  if (o.json) {
    std::cout << size_bound_to_json(b);
  } else {
    std::cout << "N=" << b.N.str() << "\n";
    if (b.bound) std::cout << "bound=" << b.bound->str() << "\n";
    else std::cout << "bound=2^" << b.exponent.str() << "\n";
  }
  return kOk;
}

int cmd_bisim(const Options& o, bool with_formula) {
  const Hda a = load_model(o.model);
  const Hda b = load_model(o.model_b);
  const CellId qa = cell_of(a, o.cell);
  const CellId qb = cell_of(b, o.cell_b);
  const bool same = split_bisimilar(a, qa, b, qb);
  std::optional<Formula> f;
  if (with_formula && !same) f = distinguishing_formula(a, qa, b, qb);
  std::optional<OracleVerdict> oracle;
  if (o.oracle) oracle = path_bisim_oracle(a, qa, b, qb, o.depth >= 0 ? o.depth : static_cast<int>(a.size() + b.size()));
  if (o.json) {
    json doc{{"bisimilar", same}};
    doc["distinguishing_formula"] = f ? json(to_string(*f)) : json(nullptr);
    if (oracle) doc["oracle"] = std::string(to_string(*oracle));
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << (same ? "bisimilar" : "not bisimilar") << "\n";
    if (f) std::cout << "distinguishing formula: " << to_string(*f) << "\n";
    if (oracle) std::cout << "oracle: " << to_string(*oracle) << "\n";
  }
  return same ? kOk : kFalse;
}

int cmd_encode_kripke(const Options& o) {
  emit(o, hda_to_json(kripke_to_hda(kripke_from_json(read_file(o.input)))));
  return kOk;
}

int cmd_encode_trace(const Options& o) {
  emit(o, hda_to_json(trace_to_hda(trace_from_json(read_file(o.input)))));
  return kOk;
}

int cmd_encode_configs(const Options& o) {
  emit(o, hda_to_json(configs_to_hda(configs_from_json(read_file(o.input)))));
  return kOk;
}

Dependence parse_deps(const std::string& text) {
  Dependence d;
  for (const auto& pair : split_list(text, ';')) {
    auto ab = split_list(pair, ':');
    if (ab.size() != 2) throw DataError("dependence pairs are written a:b;b:c");
    d.emplace(ab[0], ab[1]);
    d.emplace(ab[1], ab[0]);
  }
  return d;
}

int cmd_trace_axioms(const Options& o) {
  TraceAxiomReport report;
  if (!o.input.empty()) {
    const TraceSpec spec = trace_from_json(read_file(o.input));
    const ConfigStructure conf = trace_configurations(spec);
    report = check_trace_axioms(configs_to_hda(conf), dependence_of(spec), &conf);
  } else if (!o.model.empty()) {
    report = check_trace_axioms(load_model(o.model), parse_deps(o.deps));
  } else {
    throw DataError("trace-axioms needs --trace or --model");
  }
  if (o.json) {
    std::cout << trace_axioms_to_json(report);
  } else {
    for (const auto& c : report.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
  return report.ok() ? kOk : kFalse;
}

std::vector<Hda> load_corpus(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Hda> out;
  for (const auto& f : files) {
    Hda h = load_model(f.string());
    if (!validate(h).ok()) throw DataError("corpus model " + f.string() + " is not a valid HDA");
    out.push_back(std::move(h));
  }
  if (out.empty()) throw DataError("no .json models in " + dir);
  return out;
}

int cmd_axioms(const Options& o) {
  std::vector<Hda> corpus;
  if (!o.corpus.empty()) {
    corpus = load_corpus(o.corpus);
  } else {
    if (!o.seed_given) throw DataError("axioms without --corpus generates models and needs --seed");
    corpus = default_corpus(static_cast<std::size_t>(o.models), o.seed);
  }
  SuiteOptions so;
  so.i_max = o.i_max;
  if (o.seed_given) so.seed = o.seed;
  const auto pool = formula_pool(o.pool_depth);
  const SuiteReport r = o.theorems ? theorem_suite(corpus, pool, so) : soundness_suite(corpus, pool, so);
  if (o.json) {
    std::cout << suite_to_json(r);
  } else {
    std::cout << (o.theorems ? "theorems" : "axioms") << ": " << r.instances << " instances, " << r.models
              << " models, " << r.failures.size() << " failures\n";
    for (const auto& f : r.failures)
      std::cout << "  " << f.schema << " fails on model " << f.model << " cell " << f.cell.value << ": "
                << to_string(f.instance) << "\n";
  }
  return r.ok() ? kOk : kFalse;
}

int cmd_compactness(const Options& o) {
  if (o.m < 0) throw DataError("-m must be non-negative");
  const auto r = compactness_demo(o.m);
  if (o.json) {
    std::cout << compactness_to_json(r);
  } else {
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      std::cout << "<t>^" << i << " true: " << (r.witness[i] ? "holds at " + r.cube.name(*r.witness[i]) : "unsatisfied")
                << "\n";
    std::cout << "<t>^" << o.m + 1 << " true: " << (r.beyond.empty() ? "holds nowhere" : "holds somewhere") << "\n";
  }
  return r.ok() ? kOk : kFalse;
}

int cmd_gen(const Options& o) {
  if (!o.seed_given) throw DataError("gen needs --seed");
  RandomHdaParams p;
  p.seed = o.seed;
  p.max_dim = o.max_dim;
  p.cells_per_level.clear();
  for (const auto& c : split_list(o.cells_per_level)) p.cells_per_level.push_back(std::stoi(c));
  p.alphabet = split_list(o.alphabet);
  p.props = split_list(o.props);
  emit(o, hda_to_json(generate_random(p)));
  return kOk;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const UnknownSymbolError*>(&e)) return "unknown-symbol";
  if (dynamic_cast<const UnknownCellError*>(&e)) return "unknown-cell";
  if (dynamic_cast<const MissingLabelError*>(&e)) return "missing-label";
  if (dynamic_cast<const FormatError*>(&e)) return "format";
  if (dynamic_cast<const WellFormednessError*>(&e)) return "well-formedness";
  if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
  if (dynamic_cast<const BudgetError*>(&e)) return "budget";
  if (dynamic_cast<const SchemaError*>(&e)) return "schema";
  return "data";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Model checking, filtration and bisimulation for higher dimensional automata"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Structured output on stdout, error objects on stderr");

  auto* validate_cmd = app.add_subcommand("validate", "Check the cubical laws and the other HDA invariants");
  validate_cmd->add_option("-m,--model", o.model, "HDA JSON file")->required();

  auto* check = app.add_subcommand("check", "Does a formula hold at a cell?");
  check->add_option("-m,--model", o.model)->required();
  check->add_option("-q,--cell", o.cell, "Cell id (default: first initial state)");
  check->add_option("-f,--formula", o.formula)->required();

  auto* satset = app.add_subcommand("satset", "List the cells satisfying a formula");
  satset->add_option("-m,--model", o.model)->required();
  satset->add_option("-f,--formula", o.formula)->required();

  auto* filt = app.add_subcommand("filtrate", "Quotient a model by a formula's closure");
  filt->add_option("-m,--model", o.model)->required();
  filt->add_option("-f,--formula", o.formula)->required();
  filt->add_option("-o,--output", o.output);

  auto* bounds = app.add_subcommand("bounds", "Exact filtration size bound for dimension n");
  bounds->add_option("-n", o.n)->required();
  bounds->add_option("--phi-size", o.phi_size)->required();

  CLI::App* bisim_cmds[2];
  int slot = 0;
  for (const char* name : {"bisim", "distinguish"}) {
    auto* c = app.add_subcommand(name, slot == 0 ? "Split-bisimilarity of two cells"
                                                 : "Split-bisimilarity plus a distinguishing formula");
    c->add_option("-a", o.model, "First HDA")->required();
    c->add_option("--qa", o.cell);
    c->add_option("-b", o.model_b, "Second HDA")->required();
    c->add_option("--qb", o.cell_b);
    c->add_flag("--oracle", o.oracle, "Also run the path-based oracle");
    c->add_option("--depth", o.depth, "Oracle depth (default: total cell count)");
    if (slot == 0) c->add_flag("--distinguish", o.distinguish, "Print a distinguishing formula");
    bisim_cmds[slot++] = c;
  }

  CLI::App* enc[3];
  const char* enc_names[] = {"encode-kripke", "encode-trace", "encode-configs"};
  for (int k = 0; k < 3; ++k) {
    enc[k] = app.add_subcommand(enc_names[k], "Convert to HDA JSON");
    enc[k]->add_option("-i,--input", o.input)->required();
    enc[k]->add_option("-o,--output", o.output);
  }

  auto* tax = app.add_subcommand("trace-axioms", "Check the trace axioms");
  tax->add_option("--trace", o.input, "TraceSpec JSON (checks its encoding)");
  tax->add_option("-m,--model", o.model, "HDA JSON");
  tax->add_option("--dependence", o.deps, "Dependent pairs, e.g. a:b;b:c");

  auto* ax = app.add_subcommand("axioms", "Validity suites for the axiom or theorem schemas");
  ax->add_option("--corpus", o.corpus, "Directory of HDA JSON files");
  ax->add_option("--models", o.models, "Size of the generated corpus");
  ax->add_option("--pool-depth", o.pool_depth);
  ax->add_option("--i-max", o.i_max);
  ax->add_flag("--theorems", o.theorems, "Run the theorem list instead of the axioms");

  auto* comp = app.add_subcommand("compactness-demo", "Nested terminations on the full m-cube");
  comp->add_option("-m", o.m);

  auto* gen = app.add_subcommand("gen", "Random valid HDA");
  gen->add_option("--max-dim", o.max_dim);
  gen->add_option("--cells", o.cells_per_level, "Cells per level, comma separated");
  gen->add_option("--alphabet", o.alphabet);
  gen->add_option("--props", o.props);
  gen->add_option("-o,--output", o.output);

  for (auto* c : {ax, gen}) c->add_option("--seed", o.seed)->each([&](const std::string&) { o.seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*check) return cmd_check(o);
    if (*satset) return cmd_satset(o);
    if (*filt) return cmd_filtrate(o);
    if (*bounds) return cmd_bounds(o);
    if (*bisim_cmds[0]) return cmd_bisim(o, o.distinguish);
    if (*bisim_cmds[1]) return cmd_bisim(o, true);
    if (*enc[0]) return cmd_encode_kripke(o);
    if (*enc[1]) return cmd_encode_trace(o);
    if (*enc[2]) return cmd_encode_configs(o);
    if (*tax) return cmd_trace_axioms(o);
    if (*ax) return cmd_axioms(o);
    if (*comp) return cmd_compactness(o);
    if (*gen) return cmd_gen(o);
  } catch (const std::exception& e) {
    if (o.json) std::cerr << json{{"error", error_kind(e)}, {"message", e.what()}}.dump() << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
