// tterel: reliability of coherent systems with dependent component
// lifetimes, modeled through an Archimedean survival copula / shared
// frailty. Evaluates survival, density and hazard curves, runs grid-based
// stochastic-order checks and sufficient-condition checkers, reproduces the
// built-in figure datasets as CSV, and validates the analytic formulas
// against a seeded Monte Carlo frailty simulation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tterel/error.hpp"
#include "tterel/figures.hpp"
#include "tterel/mc.hpp"
#include "tterel/model_spec.hpp"
#include "tterel/orders.hpp"
#include "tterel/residual.hpp"

namespace {

using namespace tterel;
using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 1;

struct GridFlags {
    std::optional<double> t_max;
    std::optional<double> x_max;
    std::optional<int> points;
    std::optional<double> slack;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("TTEREL_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            fail(Errc::InvalidArgument, "TTEREL_SEED is not an unsigned integer");
        }
    }
    return kDefaultSeed;
}

int parse_index(const std::string& text, const std::string& target) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "bad component index in target '" + target + "'");
    }
}

// Targets: system | parallel | component:i | series:i,j,...
LifetimeFunctions resolve_target(const TTEModel& model, const std::string& target) {
    if (target == "system") return system_lifetime(model);
    if (target == "parallel") return parallel_lifetime(model);
    if (target.rfind("component:", 0) == 0) {
        return marginal(model, parse_index(target.substr(10), target));
    }
    if (target.rfind("series:", 0) == 0) {
        IndexSet P;
        std::string rest = target.substr(7);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            P.push_back(parse_index(rest.substr(pos, next - pos), target));
            pos = next + 1;
        }
        return series_lifetime(model, P);
    }
    fail(Errc::InvalidArgument, "unknown target '" + target + "'");
}

Grid resolve_time_grid(const ModelSpec& spec, const LifetimeFunctions& lead,
                       const GridFlags& flags) {
    const std::size_t points =
        static_cast<std::size_t>(flags.points.value_or(spec.grid.points.value_or(1024)));
    const double slack = flags.slack.value_or(spec.grid.slack.value_or(1e-9));
    double t_max;
    if (flags.t_max)
        t_max = *flags.t_max;
    else if (spec.grid.t_max)
        t_max = *spec.grid.t_max;
    else
        t_max = solve_decreasing_level(lead.log_survival, std::log(1e-6));
    return make_log_linear_grid(t_max, points, slack);
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) fail(Errc::IoError, "cannot open '" + out_path + "' for writing");
    out << text;
}

ordered_json witness_json(const Witness& w) {
    return ordered_json{{"t0", w.t0}, {"t1", w.t1}, {"v0", w.v0}, {"v1", w.v1}};
}

constexpr std::size_t kMaxWitnessesInReport = 16;

ordered_json order_report_json(const OrderReport& rep) {
    ordered_json witnesses = ordered_json::array();
    for (std::size_t i = 0; i < rep.witnesses.size() && i < kMaxWitnessesInReport; ++i)
        witnesses.push_back(witness_json(rep.witnesses[i]));
    return ordered_json{{"order", order_name(rep.order)},
                        {"verdict", verdict_name(rep.verdict)},
                        {"witness_count", rep.witnesses.size()},
                        {"witnesses", witnesses},
                        {"checked_from", rep.checked_from},
                        {"checked_to", rep.checked_to},
                        {"checked_points", rep.checked_points},
                        {"note", rep.note}};
}

ordered_json condition_report_json(const ConditionReport& rep) {
    ordered_json subconditions = ordered_json::array();
    for (const auto& sc : rep.subconditions) {
        ordered_json witnesses = ordered_json::array();
        for (std::size_t i = 0; i < sc.witnesses.size() && i < kMaxWitnessesInReport; ++i)
            witnesses.push_back(witness_json(sc.witnesses[i]));
        subconditions.push_back(ordered_json{{"name", sc.name},
                                             {"holds", sc.holds},
                                             {"witness_count", sc.witnesses.size()},
                                             {"witnesses", witnesses}});
    }
    ordered_json claims = ordered_json::array();
    for (const auto& c : rep.claims) {
        ordered_json requires_cnf = ordered_json::array();
        for (const auto& clause : c.requirements) requires_cnf.push_back(clause);
        claims.push_back(ordered_json{{"order", order_name(c.order)},
                                      {"statement", c.statement},
                                      {"implied", c.implied},
                                      {"requires", requires_cnf}});
    }
    return ordered_json{{"proposition", proposition_name(rep.id)},
                        {"subconditions", subconditions},
                        {"claims", claims},
                        {"all_hold", rep.all_hold}};
}

std::vector<StochOrder> parse_orders(const std::string& csv) {
    std::vector<StochOrder> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        std::string name = csv.substr(pos, next - pos);
        if (name == "st" || name == "ST")
            out.push_back(StochOrder::ST);
        else if (name == "hr" || name == "HR")
            out.push_back(StochOrder::HR);
        else if (name == "rhr" || name == "RHR")
            out.push_back(StochOrder::RHR);
        else if (name == "lr" || name == "LR")
            out.push_back(StochOrder::LR);
        else
            fail(Errc::InvalidArgument, "unknown order '" + name + "'");
        pos = next + 1;
    }
    if (out.empty()) fail(Errc::InvalidArgument, "no orders requested");
    return out;
}

int cmd_eval(const std::string& spec_path, const std::string& what, const std::string& target,
             const GridFlags& flags, const std::string& out_path, bool dump_spec) {
    ModelSpec spec = load_model_spec(spec_path);
    if (dump_spec) {
        write_text(dump_model_spec(spec).dump(2) + "\n", out_path);
        return 0;
    }
    TTEModel model = to_model(spec);
    LifetimeFunctions lf = resolve_target(model, target);
    Grid grid = resolve_time_grid(spec, lf, flags);

    const std::function<double(double)>* column = nullptr;
    if (what == "survival")
        column = &lf.survival;
    else if (what == "density")
        column = &lf.density;
    else if (what == "hazard")
        column = &lf.hazard;
    else
        fail(Errc::InvalidArgument, "unknown quantity '" + what + "'");

    std::string csv = "t,value\n";
    char buf[64];
    for (double t : grid.points) {
        // hazard plots stop where survival leaves the representable window
        if (what == "hazard" && lf.log_survival(t) < std::log(grid.domain_clip)) break;
        std::snprintf(buf, sizeof(buf), "%.17g", t);
        csv += buf;
        csv += ',';
        std::snprintf(buf, sizeof(buf), "%.17g", (*column)(t));
        csv += buf;
        csv += '\n';
    }
    write_text(csv, out_path);
    return 0;
}

int cmd_compare(const std::string& spec_a_path, const std::string& spec_b_path,
                const std::string& target_a, const std::string& target_b,
                const std::string& orders_csv, const GridFlags& flags,
                const std::string& out_path) {
    const std::vector<StochOrder> requested = parse_orders(orders_csv);
    ModelSpec spec_a = load_model_spec(spec_a_path);
    ModelSpec spec_b = load_model_spec(spec_b_path);
    TTEModel model_a = to_model(spec_a);
    TTEModel model_b = to_model(spec_b);
    LifetimeFunctions lf_a = resolve_target(model_a, target_a);
    LifetimeFunctions lf_b = resolve_target(model_b, target_b);
    Grid grid = resolve_time_grid(spec_a, lf_a, flags);

    auto requested_has = [&](StochOrder o) {
        for (StochOrder r : requested)
            if (r == o) return true;
        return false;
    };

    std::vector<OrderReport> reports;
    ordered_json order_obj = ordered_json::object();
    for (StochOrder o : {StochOrder::ST, StochOrder::HR, StochOrder::RHR, StochOrder::LR}) {
        OrderReport rep;
        try {
            switch (o) {
                case StochOrder::ST: rep = check_st(lf_a, lf_b, grid); break;
                case StochOrder::HR: rep = check_hr(lf_a, lf_b, grid); break;
                case StochOrder::RHR: rep = check_rhr(lf_a, lf_b, grid); break;
                case StochOrder::LR: rep = check_lr(lf_a, lf_b, grid); break;
            }
        } catch (const Error& e) {
            if (requested_has(o)) throw;
            rep.order = o;
            rep.verdict = Verdict::Inconclusive;
            rep.note = e.what();
        }
        reports.push_back(rep);
        std::string key = order_name(o);
        for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        order_obj[key] = order_report_json(rep);
    }

    AuditResult audit = implication_audit(reports);
    bool all_requested_hold = true;
    ordered_json requested_names = ordered_json::array();
    for (StochOrder o : requested) {
        requested_names.push_back(order_name(o));
        for (const auto& rep : reports)
            if (rep.order == o) all_requested_hold = all_requested_hold && rep.verdict == Verdict::Holds;
    }

    ordered_json doc{{"target_a", lf_a.label},
                     {"target_b", lf_b.label},
                     {"grid", ordered_json{{"from", grid.points.front()},
                                           {"to", grid.points.back()},
                                           {"points", grid.points.size()},
                                           {"slack", grid.slack}}},
                     {"orders", order_obj},
                     {"implication_audit",
                      ordered_json{{"consistent", audit.consistent}, {"violations", audit.violations}}},
                     {"requested", requested_names},
                     {"all_requested_hold", all_requested_hold}};
    write_text(doc.dump(2) + "\n", out_path);
    return all_requested_hold ? 0 : 1;
}

int cmd_check(const std::string& prop_name, const std::string& spec_a_path,
              const std::string& spec_b_path, std::optional<int> component,
              const std::string& orders_csv, const GridFlags& flags, const std::string& out_path) {
    const auto id = proposition_from_name(prop_name);
    if (!id) fail(Errc::InvalidArgument, "unknown proposition '" + prop_name + "'");

    ModelSpec spec_a = load_model_spec(spec_a_path);
    TTEModel model_a = to_model(spec_a);
    std::optional<TTEModel> model_b;
    if (!spec_b_path.empty()) model_b = to_model(load_model_spec(spec_b_path));

    PropositionInputs inputs;
    inputs.a = &model_a;
    if (model_b) inputs.b = &*model_b;
    inputs.component = component;

    const std::size_t points =
        static_cast<std::size_t>(flags.points.value_or(spec_a.grid.points.value_or(1024)));
    const double slack = flags.slack.value_or(spec_a.grid.slack.value_or(1e-9));
    PropositionGrids grids = default_proposition_grids(*id, inputs, points);
    grids.time_grid.slack = slack;
    grids.x_grid.slack = slack;
    if (flags.t_max) grids.time_grid = make_log_linear_grid(*flags.t_max, points, slack);
    if (flags.x_max) grids.x_grid = make_linear_grid(*flags.x_max, points, slack);

    ConditionReport rep = evaluate_proposition(*id, inputs, grids);

    std::vector<StochOrder> requested;
    if (!orders_csv.empty()) {
        requested = parse_orders(orders_csv);
    } else {
        for (const auto& c : rep.claims) {
            bool seen = false;
            for (StochOrder o : requested) seen = seen || o == c.order;
            if (!seen) requested.push_back(c.order);
        }
    }
    bool requested_hold = true;
    ordered_json requested_names = ordered_json::array();
    for (StochOrder o : requested) {
        requested_names.push_back(order_name(o));
        requested_hold = requested_hold && rep.claim_implied(o);
    }

    ordered_json doc = condition_report_json(rep);
    doc["requested_orders"] = requested_names;
    doc["requested_hold"] = requested_hold;
    write_text(doc.dump(2) + "\n", out_path);
    return requested_hold ? 0 : 1;
}

int cmd_figure(const std::string& name, int points, const std::string& out_path) {
    FigureTable table = figure_data(name, static_cast<std::size_t>(points));
    const std::string path = out_path.empty() ? name + ".csv" : out_path;
    write_text(to_csv(table), path);
    return 0;
}

int cmd_validate(const std::string& spec_path, std::size_t samples,
                 const std::optional<std::uint64_t>& seed_flag, const std::string& out_path) {
    ModelSpec spec = load_model_spec(spec_path);
    TTEModel model = to_model(spec);
    const std::uint64_t seed = resolve_seed(seed_flag);

    mc::SampleBatch batch = mc::sample(model, samples, seed);
    LifetimeFunctions sys = system_lifetime(model);

    double max_abs_z = 0.0;
    ordered_json points = ordered_json::array();
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
        const double analytic = sys.survival(t);
        const mc::Estimate e = mc::empirical_survival(batch, model.structure(), t);
        const double z = e.std_error > 0.0 ? (e.value - analytic) / e.std_error
                                           : (e.value == analytic ? 0.0 : 1e9);
        max_abs_z = std::max(max_abs_z, std::abs(z));
        points.push_back(ordered_json{{"t", t},
                                      {"analytic", analytic},
                                      {"empirical", e.value},
                                      {"std_error", e.std_error},
                                      {"z", z}});
    }
    const bool pass = max_abs_z <= 4.0;
    ordered_json doc{{"seed", seed},       {"samples", samples}, {"target", "system"},
                     {"points", points},   {"max_abs_z", max_abs_z},
                     {"pass", pass}};
    write_text(doc.dump(2) + "\n", out_path);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "tterel: coherent-system reliability under Archimedean-copula (frailty) dependence"};
    app.require_subcommand(1);

    std::string spec_path, spec_b_path, out_path, target = "system", target_b = "system";
    std::string what = "survival", orders = "st,hr,rhr,lr", check_orders, prop_name, figure_name;
    GridFlags flags;
    bool dump_spec = false;
    std::optional<int> component;
    std::optional<std::uint64_t> seed;
    std::size_t samples = 100000;
    int figure_points = 512;

    auto add_grid_flags = [&](CLI::App* cmd, bool with_x_max) {
        cmd->add_option("--grid-points", flags.points, "number of grid points (default 1024)");
        cmd->add_option("--t-max", flags.t_max,
                        "time-grid upper end (default: survival reaches 1e-6)");
        if (with_x_max)
            cmd->add_option("--x-max", flags.x_max,
                            "use a linear x grid on (0, x-max] for generator-domain conditions");
        cmd->add_option("--slack", flags.slack, "relative certificate tolerance (default 1e-9)");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a lifetime curve as CSV");
    eval->add_option("spec", spec_path, "model spec JSON")->required();
    eval->add_option("--what", what, "survival | density | hazard");
    eval->add_option("--target", target, "system | parallel | component:i | series:i,j,...");
    eval->add_option("--out", out_path, "output file (default stdout)");
    eval->add_flag("--dump-spec", dump_spec, "emit the canonical spec JSON and exit");
    add_grid_flags(eval, false);

    CLI::App* compare = app.add_subcommand("compare", "grid-check stochastic orders between two lifetimes");
    compare->add_option("spec_a", spec_path, "model spec JSON for the lower lifetime")->required();
    compare->add_option("spec_b", spec_b_path, "model spec JSON for the upper lifetime")->required();
    compare->add_option("--orders", orders, "comma list of st,hr,rhr,lr (all by default)");
    compare->add_option("--target-a", target, "target in model A (default system)");
    compare->add_option("--target-b", target_b, "target in model B (default system)");
    compare->add_option("--out", out_path, "output file (default stdout)");
    add_grid_flags(compare, false);

    CLI::App* check = app.add_subcommand("check", "evaluate a sufficient-condition checker");
    check->add_option("proposition", prop_name,
                      "SERIES_COMMON_W | SERIES_COMMON_R | PARALLEL2_COMMON_W_SHARED_MARGIN | "
                      "PARALLEL2_ID_COMMON_W | PARALLEL2_COMMON_R | COHERENT_COMMON_R | "
                      "COHERENT_COMMON_STRUCT_W | COHERENT_COMBINED | COMPONENT_VS_SERIES | "
                      "SERIES_VS_PARALLEL | SERIES_VS_PARALLEL_COMMON_R | RESIDUAL_TP2")
        ->required();
    check->add_option("--spec-a", spec_path, "model spec JSON (model A)")->required();
    check->add_option("--spec-b", spec_b_path, "model spec JSON (model B, when the id needs two)");
    check->add_option("--component", component, "component index for COMPONENT_VS_SERIES");
    check->add_option("--orders", check_orders,
                      "orders whose claims gate the exit code (default: all the id supports)");
    check->add_option("--out", out_path, "output file (default stdout)");
    add_grid_flags(check, true);

    CLI::App* figure = app.add_subcommand("figure", "write a built-in figure dataset as CSV");
    figure
        ->add_option("name", figure_name,
                     "fig1_left:  hazards of X_1:2, X_1, X_2 for W(t)=(1+t)^-1, R_1=e^{2t}-1, "
                     "R_2=e^t-1\n"
                     "fig1_right: same curves for W(t)=exp(2(1-e^t))\n"
                     "fig2:       hazards of X_1:2, X_2:2 for W(x)=(1+3x)^-1/3, R_1=(e^t-1)/10, "
                     "R_2=t on (0,5]\n"
                     "fig3:       aircraft transforms phi_1 (W_1=1/(1+x)), phi_2 (W_2=3/(3+x)) "
                     "and their ratio on (0,10]\n"
                     "fig4:       residual reliabilities of the series over {1,2} in a "
                     "3-component model, W=exp(2(1-e^x)), R_1=(e^x-1)/10, R_2=(e^x-1)/5, R_3=x, "
                     "t=1, and their ratio")
        ->required();
    figure->add_option("--points", figure_points, "rows per curve (default 512)");
    figure->add_option("--out", out_path, "output file (default <name>.csv)");

    CLI::App* validate = app.add_subcommand("validate", "Monte Carlo agreement report for a model");
    validate->add_option("spec", spec_path, "model spec JSON")->required();
    validate->add_option("--samples", samples, "sample count (default 100000)");
    validate->add_option("--seed", seed, "RNG seed (fallback: TTEREL_SEED env, then 1)");
    validate->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(eval))
            return cmd_eval(spec_path, what, target, flags, out_path, dump_spec);
        if (app.got_subcommand(compare))
            return cmd_compare(spec_path, spec_b_path, target, target_b, orders, flags, out_path);
        if (app.got_subcommand(check))
            return cmd_check(prop_name, spec_path, spec_b_path, component, check_orders, flags,
                             out_path);
        if (app.got_subcommand(figure)) return cmd_figure(figure_name, figure_points, out_path);
        if (app.got_subcommand(validate)) return cmd_validate(spec_path, samples, seed, out_path);
    } catch (const tterel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: InvalidArgument: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
