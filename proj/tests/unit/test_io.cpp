#include <doctest.h>

#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "hdml/errors.hpp"
#include "hdml/io.hpp"

using namespace hdml;
using nlohmann::json;

TEST_CASE("HDA documents round-trip") {
  CHECK(hda_from_json(hda_to_json(fx::square())) == fx::square());
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Hda h = fx::random_model(seed, 3, 6, false);
    const Hda back = hda_from_json(hda_to_json(h));
    CHECK(back == h);
    CHECK(hda_to_json(back) == hda_to_json(h));
  }
}

TEST_CASE("HDA document layout") {
  const json j = json::parse(hda_to_json(fx::square()));
  CHECK(j["cells"].size() == 9);
  CHECK(j["s"].size() == 6);
  CHECK(j["t"].size() == 6);
  CHECK(j["labels"]["a_low"] == "a");
  CHECK(j["initial"] == json::array({"q0_1"}));
  CHECK(j["final"] == json::array({"q0_3"}));
  bool found = false;
  for (const auto& e : j["s"])
    if (e[0] == "q2" && e[1] == 2) found = (e[2] == "a_low");
  CHECK(found);
}

TEST_CASE("key order does not matter and valuation is optional") {
  const char* doc = R"({"final": [], "initial": ["x"], "t": [["e", 1, "y"]], "s": [["e", 1, "x"]],
                        "labels": {"e": "a"}, "cells": [{"dim": 0, "id": "x"}, {"id": "y", "dim": 0},
                        {"id": "e", "dim": 1}], "valuation": {"y": ["p"]}})";
  const Hda h = hda_from_json(doc);
  CHECK(validate(h).ok());
  CHECK(h.has_prop(h.at("y"), "p"));
  CHECK(h.s(h.at("e"), 1) == h.at("x"));
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS((void)hda_from_json("not json"), FormatError);
  CHECK_THROWS_AS((void)hda_from_json(R"({"s": []})"), FormatError);
  CHECK_THROWS_AS((void)hda_from_json(R"({"cells": [{"id": "x", "dim": 0}], "s": [["x", 1, "nope"]]})"),
                  FormatError);
  CHECK_THROWS_AS((void)hda_from_json(R"({"cells": [{"id": "x", "dim": 0}], "initial": ["z"]})"), FormatError);
  CHECK_THROWS_AS((void)hda_from_json(R"({"cells": [{"id": "x"}]})"), FormatError);
  CHECK_THROWS_AS((void)kripke_from_json(R"({"states": ["u"], "trans": [["u", "a", "w"]]})"), FormatError);
  CHECK_THROWS_AS((void)configs_from_json(R"({"events": ["e"], "configs": [["f"]]})"), FormatError);
  CHECK_THROWS_AS((void)trace_from_json(R"({"alphabet": ["a"], "poset": {"events": ["e"], "leq": [["e", "g"]]}})"),
                  FormatError);
  CHECK_THROWS_AS((void)read_file("/nonexistent/file.json"), FormatError);
}

TEST_CASE("other formats round-trip") {
  std::mt19937_64 rng(79);
  for (int k = 0; k < 20; ++k) {
    const KripkeStructure ks = fx::random_kripke(rng, 4, 6);
    const KripkeStructure back = kripke_from_json(kripke_to_json(ks));
    CHECK(kripke_to_json(back) == kripke_to_json(ks));
    CHECK(kripke_to_hda(back) == kripke_to_hda(ks));

    const TraceSpec t = fx::random_trace(rng, 4);
    const TraceSpec tb = trace_from_json(trace_to_json(t));
    CHECK(trace_to_json(tb) == trace_to_json(t));
    CHECK(trace_to_hda(tb) == trace_to_hda(t));

    const ConfigStructure c = trace_configurations(t);
    const ConfigStructure cb = configs_from_json(configs_to_json(c));
    CHECK(configs_to_hda(cb) == configs_to_hda(c));
  }
  const json tj = json::parse(trace_to_json(fx::random_trace(rng, 3)));
  CHECK(tj.contains("poset"));
  CHECK(tj["poset"].contains("leq"));
}

TEST_CASE("report writers") {
  const Hda twins = fx::twin_squares({"p"});
  const auto f = filtrate(Model(twins), parse("<s><s> true"));
  const json fj = json::parse(filtration_to_json(twins, f));
  CHECK(fj["classes"].size() == twins.size());
  CHECK(fj["classes"]["q2_x"] == fj["classes"]["q2_y"]);
  CHECK(hda_from_json(fj.dump()) == f.quotient);

  const json bj = json::parse(size_bound_to_json(size_bound(2, 4)));
  CHECK(bj["N"] == "13");
  CHECK(bj["bound"] == "4503599627370496");
  const json huge = json::parse(size_bound_to_json(size_bound(20, 50)));
  CHECK(huge["bound"].is_null());

  const json vj = json::parse(validation_to_json(fx::corrupted_square(), validate(fx::corrupted_square())));
  CHECK(vj["valid"] == false);
  CHECK_FALSE(vj["violations"].empty());

  const json cj = json::parse(compactness_to_json(compactness_demo(2)));
  CHECK(cj["ok"] == true);
  const json lj = json::parse(split_lts_to_json(fx::square(), split_lts(fx::square(), fx::square().at("q0_1"))));
  CHECK(lj["states"].size() == 9);
}
