#include "tterel/model_spec.hpp"

#include <fstream>

#include "tterel/error.hpp"

namespace tterel {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(Errc::SpecParseError, where + ": unknown field '" + key + "'");
    }
}

std::map<std::string, double> parse_params(const json& obj, const std::string& where) {
    std::map<std::string, double> params;
    if (!obj.is_object()) fail(Errc::SpecParseError, where + ": params must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!value.is_number()) fail(Errc::SpecParseError, where + ": parameter '" + key + "' must be a number");
        params[key] = value.get<double>();
    }
    return params;
}

Generator parse_generator(const json& obj) {
    if (!obj.is_object()) fail(Errc::SpecParseError, "generator must be an object");
    reject_unknown_keys(obj, {"family", "params"}, "generator");
    if (!obj.contains("family") || !obj["family"].is_string())
        fail(Errc::SpecParseError, "generator.family must be a string");
    std::map<std::string, double> params;
    if (obj.contains("params")) params = parse_params(obj["params"], "generator");
    return Generator::make(obj["family"].get<std::string>(), params);
}

AgingFunction parse_aging(const json& obj, std::size_t index) {
    const std::string where = "aging[" + std::to_string(index) + "]";
    if (!obj.is_object()) fail(Errc::SpecParseError, where + " must be an object");
    reject_unknown_keys(obj, {"family", "params"}, where);
    if (!obj.contains("family") || !obj["family"].is_string())
        fail(Errc::SpecParseError, where + ".family must be a string");
    std::map<std::string, double> params;
    if (obj.contains("params")) params = parse_params(obj["params"], where);
    return AgingFunction::make(obj["family"].get<std::string>(), params);
}

Structure parse_structure(const json& obj) {
    if (!obj.is_object()) fail(Errc::SpecParseError, "structure must be an object");
    if (obj.contains("builtin")) {
        reject_unknown_keys(obj, {"builtin", "n", "k"}, "structure");
        if (!obj["builtin"].is_string()) fail(Errc::SpecParseError, "structure.builtin must be a string");
        if (!obj.contains("n") || !obj["n"].is_number_integer())
            fail(Errc::SpecParseError, "structure.n must be an integer");
        std::optional<int> k;
        if (obj.contains("k")) {
            if (!obj["k"].is_number_integer()) fail(Errc::SpecParseError, "structure.k must be an integer");
            k = obj["k"].get<int>();
        }
        return Structure::builtin(obj["builtin"].get<std::string>(), obj["n"].get<int>(), k);
    }
    if (obj.contains("minimal_path_sets")) {
        reject_unknown_keys(obj, {"minimal_path_sets", "n"}, "structure");
        const json& sets = obj["minimal_path_sets"];
        if (!sets.is_array() || sets.empty())
            fail(Errc::SpecParseError, "structure.minimal_path_sets must be a nonempty array");
        std::vector<IndexSet> path_sets;
        int max_index = 0;
        for (const auto& set : sets) {
            if (!set.is_array()) fail(Errc::SpecParseError, "each path set must be an array");
            IndexSet p;
            for (const auto& idx : set) {
                if (!idx.is_number_integer())
                    fail(Errc::SpecParseError, "path set entries must be integers");
                p.push_back(idx.get<int>());
                max_index = std::max(max_index, p.back());
            }
            path_sets.push_back(std::move(p));
        }
        int n = max_index;
        if (obj.contains("n")) {
            if (!obj["n"].is_number_integer()) fail(Errc::SpecParseError, "structure.n must be an integer");
            n = obj["n"].get<int>();
        }
        return Structure::from_path_sets(n, std::move(path_sets));
    }
    fail(Errc::SpecParseError, "structure needs 'builtin' or 'minimal_path_sets'");
}

GridSpec parse_grid(const json& obj) {
    if (!obj.is_object()) fail(Errc::SpecParseError, "grid must be an object");
    reject_unknown_keys(obj, {"t_max", "points", "slack"}, "grid");
    GridSpec g;
    if (obj.contains("t_max")) {
        if (!obj["t_max"].is_number()) fail(Errc::SpecParseError, "grid.t_max must be a number");
        g.t_max = obj["t_max"].get<double>();
    }
    if (obj.contains("points")) {
        if (!obj["points"].is_number_integer()) fail(Errc::SpecParseError, "grid.points must be an integer");
        g.points = obj["points"].get<int>();
    }
    if (obj.contains("slack")) {
        if (!obj["slack"].is_number()) fail(Errc::SpecParseError, "grid.slack must be a number");
        g.slack = obj["slack"].get<double>();
    }
    return g;
}

const char* generator_param_names(GenFamily f, std::size_t i) {
    switch (f) {
        case GenFamily::Independence: return "";
        case GenFamily::Clayton: return i == 0 ? "a" : "b";
        default: return "theta";
    }
}

const char* aging_param_names(AgingFamily f, std::size_t i) {
    switch (f) {
        case AgingFamily::Linear: return "c";
        case AgingFamily::ExpMinusOne: return i == 0 ? "c" : "s";
        case AgingFamily::Power: return i == 0 ? "lambda" : "k";
        case AgingFamily::Custom: return "";
    }
    return "";
}

}  // namespace

ModelSpec parse_model_spec(const nlohmann::json& doc) {
    if (!doc.is_object()) fail(Errc::SpecParseError, "spec must be a JSON object");
    reject_unknown_keys(doc, {"generator", "aging", "structure", "grid"}, "spec");
    for (const char* key : {"generator", "aging", "structure"})
        if (!doc.contains(key))
            fail(Errc::SpecParseError, std::string("spec missing field '") + key + "'");

    ModelSpec spec;
    spec.generator = parse_generator(doc["generator"]);
    if (!doc["aging"].is_array() || doc["aging"].empty())
        fail(Errc::SpecParseError, "aging must be a nonempty array");
    for (std::size_t i = 0; i < doc["aging"].size(); ++i)
        spec.aging.push_back(parse_aging(doc["aging"][i], i));
    spec.structure = parse_structure(doc["structure"]);
    if (doc.contains("grid")) spec.grid = parse_grid(doc["grid"]);

    if (spec.aging.size() != static_cast<std::size_t>(spec.structure.n()))
        fail(Errc::SpecParseError,
             "aging list has " + std::to_string(spec.aging.size()) + " entries for n=" +
                 std::to_string(spec.structure.n()));
    return spec;
}

ModelSpec load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::SpecParseError, std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return parse_model_spec(doc);
}

nlohmann::ordered_json dump_model_spec(const ModelSpec& spec) {
    nlohmann::ordered_json doc;
    {
        nlohmann::ordered_json gen;
        gen["family"] = family_name(spec.generator.family());
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < spec.generator.params().size(); ++i)
            params[generator_param_names(spec.generator.family(), i)] = spec.generator.params()[i];
        gen["params"] = params;
        doc["generator"] = gen;
    }
    {
        nlohmann::ordered_json aging = nlohmann::ordered_json::array();
        for (const auto& r : spec.aging) {
            nlohmann::ordered_json entry;
            entry["family"] = family_name(r.family());
            nlohmann::ordered_json params = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < r.params().size(); ++i)
                params[aging_param_names(r.family(), i)] = r.params()[i];
            entry["params"] = params;
            aging.push_back(entry);
        }
        doc["aging"] = aging;
    }
    {
        nlohmann::ordered_json st;
        st["n"] = spec.structure.n();
        nlohmann::ordered_json sets = nlohmann::ordered_json::array();
        for (const auto& p : spec.structure.minimal_path_sets()) sets.push_back(p);
        st["minimal_path_sets"] = sets;
        doc["structure"] = st;
    }
    if (spec.grid.t_max || spec.grid.points || spec.grid.slack) {
        nlohmann::ordered_json g = nlohmann::ordered_json::object();
        if (spec.grid.t_max) g["t_max"] = *spec.grid.t_max;
        if (spec.grid.points) g["points"] = *spec.grid.points;
        if (spec.grid.slack) g["slack"] = *spec.grid.slack;
        doc["grid"] = g;
    }
    return doc;
}

TTEModel to_model(const ModelSpec& spec) {
    return TTEModel(spec.generator, spec.aging, spec.structure);
}

}  // namespace tterel
