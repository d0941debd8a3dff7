#include "hypo/errors.hpp"
#include "hypo/job.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hypo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("hypo_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

const char* kClassify = R"({
  "schema": 1,
  "command": "classify",
  "model": {"kind": "SU2"},
  "c": [[1, "1", "0"], [0, "0", "1"]],
  "q": ["0", "1/2"]
})";

}  // namespace

TEST_CASE("classify job writes a verdict with the resolved job", "[cli]") {
    JobSpec job = parse_job(kClassify);
    auto dir = scratch("classify");
    RunResult r = run_job(job, dir.string());
    REQUIRE(r.exit_code == 0);
    auto v = load(dir / "verdict.json");
    CHECK(v["decision"] == "GloballyHypoelliptic");
    CHECK(v["rigor"] == "Certified");
    // defaults are recorded
    CHECK(v["job"]["max_label"] == 40);
    CHECK(v["job"]["scan"]["K"] == 200);
    CHECK(v["job"]["tolerances"]["residual"] == 1e-8);
}

TEST_CASE("solve job with an empty rhs", "[cli]") {
    JobSpec job = parse_job(R"({"schema": 1, "command": "solve", "model": {"kind": "SU2"},
                                "c": [[1, 1, 0], [0, 0, 1]], "q": [0, 0.5]})");
    auto dir = scratch("solve_empty");
    RunResult r = run_job(job, dir.string());
    CHECK(r.exit_code == 0);
    std::string csv = slurp(dir / "u_field.csv");
    CHECK(csv.find("# job=") != std::string::npos);
    CHECK(csv.substr(csv.rfind("rep_label")) == "rep_label,r,s,grid_index,t,re,im\n");
    CHECK(load(dir / "solution.json")["modes"] == 0);
}

TEST_CASE("solve job with modes", "[cli]") {
    JobSpec job = parse_job(R"({"schema": 1, "command": "solve", "model": {"kind": "SU2"},
        "c": [[1, 1, 0], [0, 0, 1]], "q": [0, 0.5], "grid_size": 128,
        "rhs": [{"rep": 2, "r": 1, "s": 1, "rows": [[0, 1, 0], [3, 0, -0.5]]},
                {"rep": 4, "r": 3, "s": 2, "rows": [[-1, 0.25, 0.25]]}]})");
    auto dir = scratch("solve");
    RunResult r = run_job(job, dir.string(), 2);
    REQUIRE(r.exit_code == 0);
    auto s = load(dir / "solution.json");
    CHECK(s["modes"] == 2);
    CHECK(s["all_solved"] == true);
    CHECK_FALSE(fs::exists(dir / "decay_u.csv"));  // too few weights to fit
}

TEST_CASE("counterexample without a sign change fails", "[cli]") {
    JobSpec job = parse_job(R"({"schema": 1, "command": "counterexample", "model": {"kind": "SU2"},
        "c": [[0, "0", "1"], [1, "1/2", "0"], [-1, "-1/2", "0"]], "q": ["0", "1/2"],
        "counterexample": {"recipe": "sign_change"}})");
    RunResult r = run_job(job, scratch("nosign").string());
    CHECK(r.exit_code == 1);
    CHECK(r.message.find("sign") != std::string::npos);
}

TEST_CASE("counterexample and verify jobs", "[cli]") {
    const std::string text = R"({"schema": 1, "command": "counterexample", "model": {"kind": "SU2"},
        "c": [[1, "2", "0"], [0, "0", "1"]], "q": ["0", "1/2"], "counterexample": {"count": 10}})";
    auto a = scratch("ce_a");
    auto b = scratch("ce_b");
    REQUIRE(run_job(parse_job(text), a.string()).exit_code == 0);
    REQUIRE(run_job(parse_job(text), b.string()).exit_code == 0);
    for (const char* name : {"counterexample.json", "f_field.csv", "u_field.csv", "summary.csv"}) {
        INFO(name);
        CHECK(slurp(a / name) == slurp(b / name));
    }
    CHECK(load(a / "counterexample.json")["recipe"] == "sign_change_b0pos");

    JobSpec v = parse_job(R"({"schema": 1, "command": "verify",
                              "counterexample": {"recipe": "small_gap", "fixture_rows": 8}})");
    auto d = scratch("verify");
    CHECK(run_job(v, d.string()).exit_code == 0);
    CHECK(load(d / "verify.json")["passed"] == true);

    // Hypoelliptic operators have no singular solution.
    JobSpec gh = parse_job(R"({"schema": 1, "command": "counterexample", "model": {"kind": "SU2"},
        "c": [[1, "1", "0"], [0, "0", "1"]], "q": ["0", "1/2"]})");
    CHECK(run_job(gh, scratch("gh").string()).exit_code == 1);
}

TEST_CASE("probe job", "[cli]") {
    JobSpec job = parse_job(R"({"schema": 1, "command": "probe", "probe": {"x": "1/3", "depth": 10}})");
    auto dir = scratch("probe");
    REQUIRE(run_job(job, dir.string()).exit_code == 0);
    CHECK(load(dir / "probe.json")["liouville"]["classification"] == "RationalDetected");
}

TEST_CASE("malformed jobs report line and field", "[cli]") {
    auto diag = [](const std::string& text) -> std::pair<int, std::string> {
        try {
            parse_job(text);
        } catch (const ParseError& e) {
            return {e.line(), e.field()};
        }
        return {-1, ""};
    };
    CHECK(diag("{\"schema\": 1,\n \"command\": \"classify\",\n \"model\": {\"kind\": \"SU2\", \"colour\": 3},\n"
               " \"c\": [[1, 1, 0]], \"q\": [0, 0.5]}") == std::make_pair(3, std::string("model.colour")));
    CHECK(diag("{\"schema\": 1, \"command\": \"classify\", \"model\": {\"kind\": \"SU2\"},\n"
               " \"c\": [[1, 1, 0], [1, 2, 0]], \"q\": [0, 0.5]}")
              .second == "c[1][0]");
    CHECK(diag("{\"schema\": 1, \"command\": \"classify\", \"model\": {\"kind\": \"SU2\"},\n"
               " \"c\": [[1, \"1/0\", 0]], \"q\": [0, 0.5]}")
              .second == "c[0][1]");
    CHECK(diag("{\"schema\": 2, \"command\": \"classify\"}").second == "schema");
    CHECK(diag("{\"schema\": 1, \"command\": \"plot\"}").second == "command");
    CHECK(diag("{\"schema\": 1, \"command\": \"classify\", \"extra\": 1}").second == "extra");
    CHECK(diag("{\"schema\": 1,\n\n \"command\": }").first == 3);
}
