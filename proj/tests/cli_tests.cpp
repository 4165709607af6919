#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "cli_runner.hpp"

using nlohmann::json;
using testutil::run_cli;
using testutil::RunResult;

namespace {

const char* kSeries2Independence = R"({
  "generator": {"family": "independence"},
  "aging": [{"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}}],
  "structure": {"builtin": "series", "n": 2}
})";

const char* kFig1Clayton = R"({
  "generator": {"family": "clayton", "params": {"a": 1, "b": 1}},
  "aging": [{"family": "exp_minus_one", "params": {"c": 2, "s": 1}},
            {"family": "exp_minus_one", "params": {"c": 1, "s": 1}}],
  "structure": {"builtin": "series", "n": 2}
})";

const char* kAircraftW1 = R"({
  "generator": {"family": "clayton", "params": {"a": 1, "b": 1}},
  "aging": [{"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}}],
  "structure": {"builtin": "aircraft4", "n": 4}
})";

std::filesystem::path write_spec(const std::string& name, const std::string& body) {
    auto path = testutil::scratch_dir() / name;
    testutil::spit(path, body);
    return path;
}

}  // namespace

TEST_CASE("eval: constant series hazard and determinism") {
    auto spec = write_spec("series2.json", kSeries2Independence);
    RunResult r = run_cli("eval \"" + spec.string() + "\" --what hazard --grid-points 64");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("t,value\n", 0) == 0);

    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(std::stod(line.substr(comma + 1)) == doctest::Approx(2.0).epsilon(1e-9));
        ++rows;
    }
    CHECK(rows >= 32);

    RunResult again = run_cli("eval \"" + spec.string() + "\" --what hazard --grid-points 64");
    CHECK(again.out == r.out);
}

TEST_CASE("eval: aircraft survival value at t=1") {
    auto spec = write_spec("aircraft.json", kAircraftW1);
    RunResult r = run_cli("eval \"" + spec.string() + "\" --t-max 2 --grid-points 64");
    REQUIRE(r.exit_code == 0);
    // the linear half of the grid hits t = 1 exactly
    bool seen = false;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("1,", 0) == 0) {
            seen = true;
            CHECK(std::stod(line.substr(2)) == doctest::Approx(8.0 / 15.0).epsilon(1e-9));
        }
    }
    CHECK(seen);
}

TEST_CASE("eval: dump-spec round trip") {
    auto spec = write_spec("aircraft.json", kAircraftW1);
    RunResult first = run_cli("eval \"" + spec.string() + "\" --dump-spec");
    REQUIRE(first.exit_code == 0);
    auto canon = testutil::scratch_dir() / "canon.json";
    testutil::spit(canon, first.out);
    RunResult second = run_cli("eval \"" + canon.string() + "\" --dump-spec");
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("compare: identical specs hold in every order") {
    auto spec = write_spec("series2.json", kSeries2Independence);
    RunResult r = run_cli("compare \"" + spec.string() + "\" \"" + spec.string() + "\"");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    for (const char* o : {"st", "hr", "rhr", "lr"})
        CHECK(doc["orders"][o]["verdict"] == "holds");
    CHECK(doc["implication_audit"]["consistent"] == true);
    CHECK(doc["all_requested_hold"] == true);
}

TEST_CASE("compare: the figure-1 HR failure carries witnesses") {
    auto spec = write_spec("fig1.json", kFig1Clayton);
    RunResult r = run_cli("compare \"" + spec.string() + "\" \"" + spec.string() +
                          "\" --target-a series:1,2 --target-b component:1 --orders hr");
    CHECK(r.exit_code == 1);
    json doc = json::parse(r.out);
    CHECK(doc["orders"]["hr"]["verdict"] == "fails");
    CHECK(doc["orders"]["hr"]["witnesses"].size() >= 1);
    CHECK(doc["implication_audit"]["consistent"] == true);

    RunResult r2 = run_cli("compare \"" + spec.string() + "\" \"" + spec.string() +
                           "\" --target-a series:1,2 --target-b component:2 --orders hr");
    CHECK(r2.exit_code == 0);
}

TEST_CASE("check: aircraft common-R proposition") {
    auto a = write_spec("air_w1.json", kAircraftW1);
    std::string w2 = kAircraftW1;
    w2.replace(w2.find("\"b\": 1"), 6, "\"b\": 3");
    auto b = write_spec("air_w2.json", w2);
    RunResult r = run_cli("check COHERENT_COMMON_R --spec-a \"" + a.string() + "\" --spec-b \"" +
                          b.string() + "\" --orders st,hr --x-max 10 --grid-points 1024");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["proposition"] == "COHERENT_COMMON_R");
    CHECK(doc["requested_hold"] == true);
    bool saw_phi_ratio = false;
    for (const auto& sc : doc["subconditions"])
        if (sc["name"] == "phi2_over_phi1_increasing") {
            saw_phi_ratio = true;
            CHECK(sc["holds"] == true);
        }
    CHECK(saw_phi_ratio);
}

TEST_CASE("check: series-vs-parallel fails for a gamma frailty") {
    auto spec = write_spec("fig1.json", kFig1Clayton);
    RunResult r = run_cli("check SERIES_VS_PARALLEL --spec-a \"" + spec.string() + "\" --orders hr");
    CHECK(r.exit_code == 1);
    json doc = json::parse(r.out);
    for (const auto& sc : doc["subconditions"])
        if (sc["name"] == "w_log_concave") CHECK(sc["holds"] == false);
}

TEST_CASE("figure: CSV bundle") {
    auto out = testutil::scratch_dir() / "fig2.csv";
    RunResult r = run_cli("figure fig2 --points 128 --out \"" + out.string() + "\"");
    CHECK(r.exit_code == 0);
    const std::string csv = testutil::slurp(out);
    CHECK(csv.rfind("t,haz_x12,haz_x22\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 129);

    RunResult bad = run_cli("figure fig9");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("validate: oracle agreement and seed fallback") {
    auto spec = write_spec("aircraft.json", kAircraftW1);
    RunResult r = run_cli("validate \"" + spec.string() + "\" --samples 20000 --seed 99");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["seed"] == 99);
    CHECK(doc["points"].size() == 4);
    CHECK(doc["pass"] == true);

    // env fallback
    RunResult env_run = run_cli("validate \"" + spec.string() + "\" --samples 5000");
    CHECK(json::parse(env_run.out)["seed"] == 1);  // default when env unset
    ::setenv("TTEREL_SEED", "1234", 1);
    RunResult env_run2 = run_cli("validate \"" + spec.string() + "\" --samples 5000");
    ::unsetenv("TTEREL_SEED");
    CHECK(json::parse(env_run2.out)["seed"] == 1234);

    // no frailty sampler: usage/spec error
    std::string frank = kSeries2Independence;
    frank.replace(frank.find("{\"family\": \"independence\"}"), 26,
                  "{\"family\": \"frank\", \"params\": {\"theta\": -1}}");
    auto frank_spec = write_spec("frank.json", frank);
    RunResult bad = run_cli("validate \"" + frank_spec.string() + "\" --samples 1000");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.rfind("error: UnsupportedFrailty", 0) == 0);
}

TEST_CASE("spec errors exit with code 2 and a diagnostic") {
    auto bad = testutil::scratch_dir() / "bad.json";
    testutil::spit(bad, "{\"generator\": {\"family\": \"independence\"}, \"extra\": 1}");
    RunResult r = run_cli("eval \"" + bad.string() + "\"");
    CHECK(r.exit_code == 2);
    CHECK(r.err.rfind("error: SpecParseError", 0) == 0);

    RunResult missing = run_cli("eval /nonexistent/spec.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.rfind("error: IoError", 0) == 0);

    RunResult usage = run_cli("eval");
    CHECK(usage.exit_code == 2);
}
