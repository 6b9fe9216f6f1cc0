#include "doctest.h"

#include "d2/cli.hpp"
#include "d2/gallery.hpp"

using namespace d2;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_job_text(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

const char* kUpper = R"({
  "field": {"kind": "rational"},
  "algebras": {
    "M": {"kind": "matrix", "n": 2},
    "N": {"kind": "structure", "dim": 3, "unit": [1, 0, 1],
          "mult": [[0,0,0,"1"], [0,1,1,"1"], [1,2,1,"1"], [2,2,2,"1"]]}
  },
  "extension": {"sub": "N", "over": "M", "map": [[1,0,0,0], [0,1,0,0], [0,0,0,1]]}
})";

}  // namespace

TEST_CASE("parse: minimal upper triangular job") {
    JobSpec j = parse_job_text(kUpper);
    CHECK(j.tasks == std::vector<std::string>{"analyze"});
    CHECK(j.ext.n.dim() == 3);
    CHECK(j.ext.m.dim() == 4);
    Report r = run_job(j);
    CHECK(r.exit_code() == 0);
    CHECK(r.dims["R"] == 1);
    CHECK(r.dims["A"] == 1);
    CHECK(r.dims["End M_N"] == 4);
    CHECK(r.flags["h_separable"] == true);
    CHECK(r.flags["left_d2"] == true);
    CHECK(r.flags["right_d2"] == true);
    CHECK(r.flags["a_iso_r"] == true);
    CHECK(r.flags["end_right_iso_m"] == true);
    CHECK(r.flags["invariants_all_m"] == true);
    CHECK(r.flags["balanced"] == false);
    CHECK(r.flags["frobenius"] == false);
    CHECK(r.flags["left_qf"] == false);
    CHECK(r.flags["right_qf"] == false);
    CHECK(r.witnesses["frobenius_system"]["none"] == "certified");
    CHECK(r.witnesses["h_separable"].contains("generator"));
}

TEST_CASE("parse: errors carry the path") {
    CHECK(error_of("{").rfind("$: not valid JSON", 0) == 0);
    CHECK(error_of(R"({"field":{"kind":"real"}})").rfind("field.kind", 0) == 0);
    CHECK(error_of(R"({"field":{"kind":"prime","p":9}})").rfind("field.p", 0) == 0);
    std::string no_unit = error_of(R"({"field":{"kind":"rational"},
        "algebras":{"A":{"kind":"structure","dim":1,"mult":[[0,0,0,1]]}},
        "extension":{"sub":"A","over":"A","map":[[1]]}})");
    CHECK(no_unit.rfind("algebras.A.unit", 0) == 0);
    CHECK(no_unit.find("unit law") != std::string::npos);
    std::string assoc = error_of(R"({"field":{"kind":"rational"},
        "algebras":{"A":{"kind":"structure","dim":3,"unit":[1,0,0],
                         "mult":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1],[1,1,2,1],[2,1,1,1]]}},
        "extension":{"sub":"A","over":"A","map":[[1,0,0],[0,1,0],[0,0,1]]}})");
    CHECK(assoc.rfind("algebras.A", 0) == 0);
    CHECK(assoc.find("associativity") != std::string::npos);
    CHECK(error_of(R"({"field":{"kind":"rational"},"algebras":{"A":{"kind":"opposite","of":"A"}},
        "extension":{"sub":"A","over":"A","map":[[1]]}})").find("refers to itself") != std::string::npos);
    CHECK(error_of(R"({"field":{"kind":"rational"},"algebras":{"A":{"kind":"matrix","n":2}},
        "extension":{"sub":"A","over":"B","map":[]}})").rfind("extension.over", 0) == 0);
    CHECK(error_of(R"({"field":{"kind":"rational"},"algebras":{"A":{"kind":"matrix","n":2}},
        "extension":{"sub":"A","over":"A","map":[[1,0,0,0]]}})").rfind("extension.map", 0) == 0);
    CHECK(error_of(R"({"example":"kC2_in_kC4","tasks":["everything"]})").rfind("tasks[0]", 0) == 0);
    CHECK(error_of(R"({"example":"kC2_in_kC4","maxDim":3})").rfind("example", 0) == 0);
    CHECK(error_of(R"({"example":"nope"})").rfind("example", 0) == 0);
}

TEST_CASE("parse: composite algebra kinds and fractions") {
    JobSpec j = parse_job_text(R"({
      "field": {"kind": "prime", "p": 3},
      "algebras": {
        "G": {"kind": "group", "table": [[0,1],[1,0]]},
        "P": {"kind": "product", "of": ["G", "G"]},
        "T": {"kind": "tensor", "of": ["G", "G"]},
        "O": {"kind": "opposite", "of": "T"}
      },
      "extension": {"sub": "G", "over": "O", "map": [[1,0,0,0],[0,0,"-2",0]]},
      "tasks": []
    })");
    CHECK(j.algebras.at("P").dim() == 4);
    CHECK(j.algebras.at("T").dim() == 4);
    CHECK(j.ext.iota(2, 1) == j.field.one());
    Report r = run_job(j);
    CHECK(r.checks.empty());
    CHECK(r.exit_code() == 0);
    std::string md = render_markdown(r);
    CHECK(md.find("##") == std::string::npos);
}

TEST_CASE("tasks: all expands in dependency order") {
    JobSpec j = parse_job_text(R"({"example":"trivial","tasks":["qf","all","d2"]})");
    CHECK(j.tasks == known_tasks());
}

TEST_CASE("round trip and determinism over the gallery") {
    for (const auto& g : gallery()) {
        CAPTURE(g.name);
        Json ref = {{"example", g.name}, {"tasks", {"analyze", "d2", "qf"}}};
        Json expanded = gallery_job(g.name);
        expanded["tasks"] = ref["tasks"];
        std::string a = render_json(run_job(parse_job(ref)));
        std::string b = render_json(run_job(parse_job(expanded)));
        CHECK(a == b);
        CHECK(render_json(run_job(parse_job(ref))) == a);
    }
}

TEST_CASE("render: scalars as exact fraction strings") {
    JobSpec j = parse_job_text(R"({"example":"scalars_in_QxQ","tasks":["weakhopf"]})");
    Report r = run_job(j);
    CHECK(r.exit_code() == 0);
    const Json& w = r.witnesses["weakhopf"];
    CHECK(w["A_genuinely_weak"] == true);
    CHECK(w["S_squared_identity"] == true);
    CHECK(w["R_coordinates"]["phi"] == Json::array({"1", "1"}));
    for (const auto& x : w["integral_E"]) CHECK(x.is_string());
    Json parsed = Json::parse(render_json(r));
    CHECK(parsed["exit"] == 0);
    CHECK_FALSE(parsed.contains("timing_ms"));
    CHECK(Json::parse(render_json(r, true)).contains("timing_ms"));
}

TEST_CASE("run: refusals and task checks") {
    Report ut = run_job(parse_job_text(R"({"example":"upper_triangular_in_M2","tasks":["frobenius","hopf","weakhopf"]})"));
    CHECK(ut.exit_code() == 1);
    CHECK(ut.refusals.size() == 3);
    CHECK(ut.refusals[0].reason == "not Frobenius (certified)");

    Report kc = run_job(parse_job_text(R"({"example":"kC2_in_kC4","tasks":["d2","bialgebroid","frobenius"]})"));
    CHECK(kc.exit_code() == 0);
    CHECK(kc.checks.size() > 50);
    CHECK(kc.witnesses["tower"]["M_2^N"] == 16);

    Report nd = run_job(parse_job_text(R"({"example":"random_non_d2","tasks":["d2","bialgebroid"]})"));
    CHECK(nd.exit_code() == 1);
    CHECK(nd.refusals.size() == 2);
}
