#include <doctest.h>

#include <json.hpp>

#include "tterel/error.hpp"
#include "tterel/figures.hpp"
#include "tterel/model_spec.hpp"
#include "tterel/orders.hpp"

using namespace tterel;
using nlohmann::json;

namespace {

json aircraft_doc() {
    return json::parse(R"({
        "generator": {"family": "clayton", "params": {"a": 1, "b": 1}},
        "aging": [
            {"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}},
            {"family": "linear", "params": {"c": 1}}
        ],
        "structure": {"builtin": "aircraft4", "n": 4}
    })");
}

}  // namespace

TEST_CASE("model spec parsing") {
    ModelSpec spec = parse_model_spec(aircraft_doc());
    CHECK(spec.generator.family() == GenFamily::Clayton);
    CHECK(spec.structure == Structure::aircraft4());
    TTEModel model = to_model(spec);
    CHECK(system_lifetime(model).survival(1.0) == doctest::Approx(8.0 / 15.0).epsilon(1e-12));

    json with_sets = json::parse(R"({
        "generator": {"family": "independence"},
        "aging": [{"family": "linear", "params": {"c": 2}},
                  {"family": "exp_minus_one", "params": {"c": 1, "s": 10}}],
        "structure": {"minimal_path_sets": [[1], [2]]},
        "grid": {"t_max": 5.0, "points": 512, "slack": 1e-8}
    })");
    ModelSpec s2 = parse_model_spec(with_sets);
    CHECK(s2.structure == Structure::parallel(2));
    CHECK(s2.grid.t_max == 5.0);
    CHECK(s2.grid.points == 512);

    json k_of_n = json::parse(R"({
        "generator": {"family": "gumbel_hougaard", "params": {"theta": 2}},
        "aging": [{"family": "linear", "params": {"c": 1}},
                  {"family": "linear", "params": {"c": 1}},
                  {"family": "linear", "params": {"c": 1}}],
        "structure": {"builtin": "k_of_n", "n": 3, "k": 2}
    })");
    CHECK(parse_model_spec(k_of_n).structure == Structure::k_of_n(3, 2));
}

TEST_CASE("model spec rejects malformed documents") {
    auto expect_parse_error = [](json doc) {
        try {
            parse_model_spec(doc);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK((e.code() == Errc::SpecParseError || e.code() == Errc::ParamOutOfRange));
        }
    };

    json unknown_top = aircraft_doc();
    unknown_top["extra"] = 1;
    expect_parse_error(unknown_top);

    json unknown_gen = aircraft_doc();
    unknown_gen["generator"]["scale"] = 2.0;
    expect_parse_error(unknown_gen);

    json unknown_param = aircraft_doc();
    unknown_param["generator"]["params"]["c"] = 2.0;
    expect_parse_error(unknown_param);

    json missing = aircraft_doc();
    missing.erase("structure");
    expect_parse_error(missing);

    json bad_count = aircraft_doc();
    bad_count["aging"].erase(3);
    expect_parse_error(bad_count);

    json bad_type = aircraft_doc();
    bad_type["generator"]["params"]["a"] = "one";
    expect_parse_error(bad_type);
}

TEST_CASE("model spec round trip is canonical") {
    ModelSpec spec = parse_model_spec(aircraft_doc());
    nlohmann::ordered_json dumped = dump_model_spec(spec);
    ModelSpec reparsed = parse_model_spec(dumped);
    CHECK(dump_model_spec(reparsed) == dumped);
    CHECK(reparsed.generator.same_law(spec.generator));
    CHECK(reparsed.structure == spec.structure);
    REQUIRE(reparsed.aging.size() == spec.aging.size());
    for (std::size_t i = 0; i < spec.aging.size(); ++i)
        CHECK(reparsed.aging[i].same_law(spec.aging[i]));

    // builtin structures dump as explicit path sets
    CHECK(dumped["structure"].contains("minimal_path_sets"));
}

TEST_CASE("figure tables") {
    SUBCASE("names and shapes") {
        CHECK(figure_names().size() == 5);
        for (const auto& name : figure_names()) {
            FigureTable t = figure_data(name, 64);
            CHECK(t.rows.size() == 64);
            for (const auto& row : t.rows) CHECK(row.size() == t.columns.size());
        }
        CHECK_THROWS_AS(figure_data("fig9"), Error);
    }
    SUBCASE("fig3: phi ratio increases") {
        FigureTable t = figure_data("fig3", 256);
        REQUIRE(t.columns == std::vector<std::string>{"x", "phi1", "phi2", "ratio"});
        double prev_ratio = 0.0;
        for (const auto& row : t.rows) {
            CHECK(row[1] <= row[2] + 1e-12);  // phi1 <= phi2
            CHECK(row[3] >= prev_ratio - 1e-9);
            prev_ratio = row[3];
        }
    }
    SUBCASE("fig1_right: hazards are ordered") {
        FigureTable t = figure_data("fig1_right", 256);
        for (const auto& row : t.rows) {
            CHECK(row[1] >= row[2] - 1e-9);  // r_series >= r_1
            CHECK(row[2] >= row[3] - 1e-9);  // r_1 >= r_2
        }
    }
    SUBCASE("fig1_left: series hazard crosses the X_1 hazard") {
        FigureTable t = figure_data("fig1_left", 512);
        bool series_above = false, series_below = false;
        for (const auto& row : t.rows) {
            if (row[1] > row[2] + 1e-9) series_above = true;
            if (row[1] < row[2] - 1e-9) series_below = true;
        }
        CHECK(series_above);
        CHECK(series_below);
    }
    SUBCASE("fig2: hazards cross on (0,5]") {
        FigureTable t = figure_data("fig2", 512);
        CHECK(t.rows.back()[0] == doctest::Approx(5.0));
        bool series_above = false, series_below = false;
        for (const auto& row : t.rows) {
            if (row[1] > row[2] + 1e-9) series_above = true;
            if (row[1] < row[2] - 1e-9) series_below = true;
        }
        CHECK(series_above);
        CHECK(series_below);
    }
    SUBCASE("fig4: conditioning ratio stays below one and decreases") {
        FigureTable t = figure_data("fig4", 256);
        double prev = 2.0;
        for (const auto& row : t.rows) {
            CHECK(row[3] <= 1.0 + 1e-12);
            CHECK(row[3] <= prev + 1e-9);
            prev = row[3];
        }
    }
    SUBCASE("csv output") {
        FigureTable t = figure_data("fig3", 8);
        const std::string csv = to_csv(t);
        CHECK(csv.rfind("x,phi1,phi2,ratio\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
        // full round-trip precision
        const double value = t.rows[3][1];
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        CHECK(csv.find(buf) != std::string::npos);
        CHECK(std::stod(buf) == value);
    }
}
