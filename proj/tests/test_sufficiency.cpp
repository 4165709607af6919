#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "tterel/orders.hpp"

using namespace tterel;

namespace {

// Whenever a proposition claims an order, the concrete grid check between
// the lifetimes the claim talks about must agree. One table drives every id.
struct SweepCase {
    std::string name;
    PropositionId id;
    TTEModel a;
    TTEModel b;          // ignored for single-model ids
    bool two_models;
    std::optional<int> component;
};

IndexSet all_components(const TTEModel& m) {
    IndexSet out;
    for (int i = 1; i <= m.n(); ++i) out.push_back(i);
    return out;
}

// The pair of lifetimes a proposition's claims compare.
std::pair<LifetimeFunctions, LifetimeFunctions> concrete_pair(const SweepCase& c) {
    switch (c.id) {
        case PropositionId::SERIES_COMMON_W:
        case PropositionId::SERIES_COMMON_R:
            return {series_lifetime(c.a, all_components(c.a)),
                    series_lifetime(c.b, all_components(c.b))};
        case PropositionId::COMPONENT_VS_SERIES:
            return {series_lifetime(c.a, all_components(c.a)), marginal(c.a, *c.component)};
        case PropositionId::SERIES_VS_PARALLEL:
        case PropositionId::SERIES_VS_PARALLEL_COMMON_R:
            return {series_lifetime(c.a, all_components(c.a)), parallel_lifetime(c.a)};
        default:
            return {system_lifetime(c.a), system_lifetime(c.b)};
    }
}

OrderReport run_check(StochOrder order, const LifetimeFunctions& lo, const LifetimeFunctions& hi,
                      const Grid& g) {
    switch (order) {
        case StochOrder::ST: return check_st(lo, hi, g);
        case StochOrder::HR: return check_hr(lo, hi, g);
        case StochOrder::RHR: return check_rhr(lo, hi, g);
        case StochOrder::LR: return check_lr(lo, hi, g);
    }
    return {};
}

AgingFunction lin(double c) { return AgingFunction::linear(c); }

std::vector<AgingFunction> rep(const AgingFunction& r, int n) {
    return std::vector<AgingFunction>(static_cast<std::size_t>(n), r);
}

}  // namespace

TEST_CASE("every implied claim is confirmed by the concrete grid check") {
    const Generator gb = Generator::gumbel_barnett(0.5);
    const Generator gh = Generator::gumbel_hougaard(2.0);
    const Generator ind = Generator::independence();
    const Generator cl21 = Generator::clayton(2, 1);
    const Generator cl11 = Generator::clayton(1, 1);

    std::vector<SweepCase> cases;
    cases.push_back({"series common W, log-concave generator", PropositionId::SERIES_COMMON_W,
                     TTEModel(gb, rep(lin(2), 2), Structure::series(2)),
                     TTEModel(gb, rep(lin(1), 2), Structure::series(2)), true, {}});
    cases.push_back({"series common R, ordered claytons", PropositionId::SERIES_COMMON_R,
                     TTEModel(cl21, {lin(1), AgingFunction::exp_minus_one(1, 2)},
                              Structure::series(2)),
                     TTEModel(cl11, {lin(1), AgingFunction::exp_minus_one(1, 2)},
                              Structure::series(2)),
                     true, {}});
    cases.push_back({"parallel-2 shared margin", PropositionId::PARALLEL2_COMMON_W_SHARED_MARGIN,
                     TTEModel(cl11, {lin(1), lin(2)}, Structure::parallel(2)),
                     TTEModel(cl11, {lin(1), lin(1)}, Structure::parallel(2)), true, {}});
    cases.push_back({"parallel-2 ID, gumbel-hougaard", PropositionId::PARALLEL2_ID_COMMON_W,
                     TTEModel(gh, rep(lin(2), 2), Structure::parallel(2)),
                     TTEModel(gh, rep(lin(1), 2), Structure::parallel(2)), true, {}});
    cases.push_back({"parallel-2 common R, ordered claytons", PropositionId::PARALLEL2_COMMON_R,
                     TTEModel(cl21, rep(lin(1), 2), Structure::parallel(2)),
                     TTEModel(cl11, rep(lin(1), 2), Structure::parallel(2)), true, {}});
    cases.push_back({"coherent common R, aircraft claytons", PropositionId::COHERENT_COMMON_R,
                     TTEModel(cl11, rep(lin(1), 4), Structure::aircraft4()),
                     TTEModel(Generator::clayton(1, 3), rep(lin(1), 4), Structure::aircraft4()),
                     true, {}});
    cases.push_back({"coherent common structure and W", PropositionId::COHERENT_COMMON_STRUCT_W,
                     TTEModel(ind, rep(lin(2), 2), Structure::parallel(2)),
                     TTEModel(ind, rep(lin(1), 2), Structure::parallel(2)), true, {}});
    cases.push_back({"coherent combined, aircraft", PropositionId::COHERENT_COMBINED,
                     TTEModel(ind, rep(lin(2), 4), Structure::aircraft4()),
                     TTEModel(ind, rep(lin(1), 4), Structure::aircraft4()), true, {}});
    cases.push_back({"component vs series, ID agings", PropositionId::COMPONENT_VS_SERIES,
                     TTEModel(gb, rep(AgingFunction::exp_minus_one(1, 2), 3),
                              Structure::series(3)),
                     TTEModel(gb, rep(lin(1), 3), Structure::series(3)), false, 2});
    cases.push_back({"series vs parallel, independence", PropositionId::SERIES_VS_PARALLEL,
                     TTEModel(ind, {lin(1), AgingFunction::exp_minus_one(1, 2)},
                              Structure::series(2)),
                     TTEModel(ind, rep(lin(1), 2), Structure::series(2)), false, {}});
    cases.push_back({"series vs parallel common R, clayton",
                     PropositionId::SERIES_VS_PARALLEL_COMMON_R,
                     TTEModel(cl11, rep(lin(1), 2), Structure::series(2)),
                     TTEModel(cl11, rep(lin(1), 2), Structure::series(2)), false, {}});

    std::size_t implied_total = 0;
    for (const auto& c : cases) {
        INFO("case: ", c.name);
        PropositionInputs in;
        in.a = &c.a;
        if (c.two_models) in.b = &c.b;
        in.component = c.component;
        PropositionGrids grids = default_proposition_grids(c.id, in);
        ConditionReport rep_out = evaluate_proposition(c.id, in, grids);

        auto [lo, hi] = concrete_pair(c);
        const double t_max = solve_decreasing_level(lo.log_survival, std::log(1e-6));
        Grid g = make_log_linear_grid(t_max, 512);
        for (const auto& claim : rep_out.claims) {
            if (!claim.implied) continue;
            ++implied_total;
            INFO("claim: ", claim.statement);
            CHECK(run_check(claim.order, lo, hi, g).verdict == Verdict::Holds);
        }
    }
    // the sweep only means something if a healthy number of claims fired
    CHECK(implied_total >= 20);
}
