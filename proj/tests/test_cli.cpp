#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "lnc/json_io.hpp"

using namespace lnc;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout
    std::string errors; // stderr
};

RunResult run_cli(const std::string& args) {
    std::string out_file = "/tmp/lnc_cli_out.txt";
    std::string err_file = "/tmp/lnc_cli_err.txt";
    std::string cmd =
        std::string(LNC_CLI_PATH) + " " + args + " > " + out_file + " 2> " + err_file;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    r.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::ifstream err(err_file);
    r.errors.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
    return r;
}

std::string fig2() { return std::string(LNC_DATA_DIR) + "/fig2.json"; }

void write_tmp(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("validate returns 0 on the bundled file and 1 on broken graphs") {
    RunResult ok = run_cli("validate " + fig2());
    CHECK(ok.exit_code == 0);
    CHECK(parse_json(ok.output)["ok"] == true);

    write_tmp("/tmp/lnc_cycle.json", R"({
      "field": {"p": 7},
      "nodes": [
        {"id": "S", "kind": "source"},
        {"id": "a", "kind": "intermediate"},
        {"id": "b", "kind": "intermediate"},
        {"id": "D", "kind": "destination"}
      ],
      "edges": [
        {"id": "e1", "from": "S", "to": "a"},
        {"id": "e2", "from": "a", "to": "b"},
        {"id": "e3", "from": "b", "to": "a"},
        {"id": "e4", "from": "b", "to": "D"}
      ],
      "source": "S",
      "destinations": [{"node": "D"}]
    })");
    RunResult cyc = run_cli("validate /tmp/lnc_cycle.json");
    CHECK(cyc.exit_code == 1);
    json rep = parse_json(cyc.output);
    CHECK(rep["ok"] == false);
    bool cycle_reported = false;
    for (const auto& issue : rep["issues"])
        if (issue["code"] == "CycleDetected") cycle_reported = true;
    CHECK(cycle_reported);
}

TEST_CASE("usage and io problems exit with 2") {
    CHECK(run_cli("validate /nonexistent.json").exit_code == 2);
    CHECK(run_cli("frobnicate x").exit_code == 2);
    CHECK(run_cli("validate").exit_code == 2);
    CHECK(run_cli("matrix " + fig2()).exit_code == 2); // no seed, no assignment
    CHECK(run_cli("mincut " + fig2()).exit_code == 2); // seed is mandatory

    write_tmp("/tmp/lnc_badfield.json",
              R"({"field":{"p":4},"nodes":[],"edges":[],"source":"S","destinations":[]})");
    CHECK(run_cli("validate /tmp/lnc_badfield.json").exit_code == 2);

    write_tmp("/tmp/lnc_badkey.json", R"({"field":{"p":7},"nodes":[],"edges":[],
      "source":"S","destinations":[],"surprise":1})");
    CHECK(run_cli("validate /tmp/lnc_badkey.json").exit_code == 2);
}

TEST_CASE("layer reports the published structure of the bundled example") {
    RunResult r = run_cli("layer " + fig2());
    REQUIRE(r.exit_code == 0);
    json j = parse_json(r.output);
    CHECK(j["report"]["layers"] == 4);
    CHECK(j["report"]["layer_sizes"] == json::array({2, 2, 4, 3}));
    CHECK(j["report"]["inserted"] == 6);
    CHECK(j["report"]["coding_points"] == 2);

    // The emitted layered file loads back and layers to itself.
    LayeredNetwork lnet = layered_from_json(j["network"]);
    CHECK(lnet.layers == 4);
    CHECK(layer(lnet.net).inserted.empty());
}

TEST_CASE("convert splits nothing on an identical-output network") {
    RunResult r = run_cli("convert " + fig2());
    REQUIRE(r.exit_code == 0);
    json j = parse_json(r.output);
    CHECK(j["map"]["relays"] == json::array());
    CHECK(network_from_json(j["network"]).nodes().size() == 8);
}

TEST_CASE("matrix emits the published dimensions") {
    RunResult r = run_cli("matrix " + fig2() + " --seed 11");
    REQUIRE(r.exit_code == 0);
    json j = parse_json(r.output);
    REQUIRE(j["interlayer"].size() == 3);
    CHECK(j["interlayer"][0]["rows"] == 2);
    CHECK(j["interlayer"][0]["cols"] == 2);
    CHECK(j["interlayer"][1]["rows"] == 4);
    CHECK(j["interlayer"][1]["cols"] == 2);
    CHECK(j["interlayer"][2]["rows"] == 3);
    CHECK(j["interlayer"][2]["cols"] == 4);
    CHECK(j["overall"]["rows"] == 3);
    CHECK(j["overall"]["cols"] == 2);
    CHECK(j["individual"].size() == 2);
}

TEST_CASE("mincut analysis of the bundled example") {
    RunResult r = run_cli("mincut " + fig2() + " --seed 9 --trials 8 --out /tmp/lnc_mc.json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.empty());
    CHECK(r.errors.find("D1") != std::string::npos); // human table on stderr
    json j = parse_json(read_file("/tmp/lnc_mc.json"));
    REQUIRE(j["reports"].size() == 2);
    for (const auto& rep : j["reports"]) {
        CHECK(rep["maxflow"] == 2);
        CHECK(rep["upper_bound"] == 2);
        CHECK(rep["max_rank"] == 2);
    }
}

TEST_CASE("simulate is deterministic and supports the tick trace") {
    std::string cmd = "simulate " + fig2() + " --seed 5 --x 1,2";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output); // byte-identical across runs

    RunResult timed = run_cli(cmd + " --timed");
    REQUIRE(timed.exit_code == 0);
    json j = parse_json(timed.output);
    CHECK(j["trace"]["N2"]["ticks"] == json::array({1, 2}));
    CHECK(j["trace"]["N2"]["buffer"] == 1);
}

TEST_CASE("explicit assignment files drive simulate") {
    Network net = network_from_json(parse_json(read_file(fig2())));
    json asg = assignment_to_json(assign_random(net, 5));
    write_tmp("/tmp/lnc_asg.json", asg.dump());
    RunResult from_file = run_cli("simulate " + fig2() + " --assignment /tmp/lnc_asg.json --x 1,2");
    RunResult from_seed = run_cli("simulate " + fig2() + " --seed 5 --x 1,2");
    REQUIRE(from_file.exit_code == 0);
    CHECK(from_file.output == from_seed.output);
}

TEST_CASE("reverse reports the transpose relation") {
    RunResult r = run_cli("reverse " + fig2() + " --seed 5 --dest 2");
    REQUIRE(r.exit_code == 0);
    json j = parse_json(r.output);
    CHECK(j["transpose_ok"] == true);
    CHECK(j["backward_valid"] == true);
    CHECK(j["network"]["source"] == "D2");

    // Multicast without --dest is a usage error.
    CHECK(run_cli("reverse " + fig2() + " --seed 5").exit_code == 2);
}

TEST_CASE("export-dot emits graphviz text for flat and layered inputs") {
    RunResult flat = run_cli("export-dot " + fig2());
    REQUIRE(flat.exit_code == 0);
    CHECK(flat.output.rfind("digraph", 0) == 0);

    run_cli("layer " + fig2() + " --out /tmp/lnc_layered_wrap.json");
    json wrap = parse_json(read_file("/tmp/lnc_layered_wrap.json"));
    write_tmp("/tmp/lnc_layered.json", wrap["network"].dump());
    RunResult ranked = run_cli("export-dot /tmp/lnc_layered.json");
    REQUIRE(ranked.exit_code == 0);
    CHECK(ranked.output.find("cluster_layer4") != std::string::npos);
}

TEST_CASE("field override changes the arithmetic") {
    RunResult r = run_cli("mincut " + fig2() + " --seed 3 --trials 8 --field 257 --dest 1");
    REQUIRE(r.exit_code == 0);
    json j = parse_json(r.output);
    CHECK(j["reports"][0]["field_order"] == 257);
}

TEST_CASE("outputs are written atomically to --out") {
    std::string path = "/tmp/lnc_atomic_out.json";
    std::remove(path.c_str());
    RunResult r = run_cli("validate " + fig2() + " --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    CHECK(parse_json(read_file(path))["ok"] == true);
    std::remove(path.c_str());
}

} // TEST_SUITE
