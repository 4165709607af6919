#include "tterel/residual.hpp"

#include <algorithm>
#include <cmath>

#include "tterel/error.hpp"

namespace tterel {

namespace {

IndexSet complement_of(const IndexSet& P, int n) {
    IndexSet out;
    for (int i = 1; i <= n; ++i)
        if (!std::binary_search(P.begin(), P.end(), i)) out.push_back(i);
    return out;
}

double log_all_alive(const TTEModel& m, double t) {
    double arg = 0.0;
    for (const auto& r : m.aging()) arg += r.value(t);
    return m.generator().log_value(arg);
}

void check_conditioning(double log_prob, double t, double clip) {
    if (!(log_prob >= std::log(clip)))
        fail(Errc::SurvivalUnderflow,
             "conditioning event probability below clip floor at t=" + std::to_string(t));
}

// Terms of Pr(T > x + t, X_{1:n} > t): each inclusion-exclusion union is
// advanced to x + t while the complement stays frozen at t.
std::vector<LifetimeTerm> system_level_terms(const TTEModel& m) {
    std::vector<LifetimeTerm> terms;
    for (const auto& u : signed_union_terms(m.structure()))
        terms.push_back({u.indices, complement_of(u.indices, m.n()), u.coefficient});
    return terms;
}

LifetimeFunctions residual_from_terms(const TTEModel& m, std::vector<LifetimeTerm> terms, double t,
                                      double log_norm, std::string label) {
    auto core = std::make_shared<const SignedSurvivalSum>(m.generator(), m.aging(),
                                                          std::move(terms), t, log_norm);
    return lifetime_from_sum(std::move(core), std::move(label));
}

void validate_spec(const ResidualSpec& spec) {
    if (spec.t < 0.0) fail(Errc::NegativeTime, "inspection time must be >= 0");
}

}  // namespace

LifetimeFunctions residual_survival(const ResidualSpec& spec) {
    validate_spec(spec);
    const TTEModel& m = spec.model;
    const double clip = 1e-12;
    if (spec.kind == ResidualKind::Usual) {
        LifetimeFunctions sys = system_lifetime(m);
        const double log_norm = sys.log_survival(spec.t);
        check_conditioning(log_norm, spec.t, clip);
        std::vector<LifetimeTerm> terms;
        for (const auto& u : signed_union_terms(m.structure()))
            terms.push_back({u.indices, {}, u.coefficient});
        return residual_from_terms(m, std::move(terms), spec.t, log_norm, "T_t");
    }
    const double log_norm = log_all_alive(m, spec.t);
    check_conditioning(log_norm, spec.t, clip);
    return residual_from_terms(m, system_level_terms(m), spec.t, log_norm, "T*_t");
}

LifetimeFunctions residual_component(const ResidualSpec& spec, int i) {
    validate_spec(spec);
    if (i < 1 || i > spec.model.n())
        fail(Errc::IndexOutOfRange, "component " + std::to_string(i));
    return residual_series(spec, {i});
}

LifetimeFunctions residual_series(const ResidualSpec& spec, const IndexSet& P) {
    validate_spec(spec);
    const TTEModel& m = spec.model;
    if (P.empty()) fail(Errc::EmptySet, "empty series set");
    IndexSet sorted = P;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int idx : sorted)
        if (idx < 1 || idx > m.n()) fail(Errc::IndexOutOfRange, "component " + std::to_string(idx));

    const double clip = 1e-12;
    if (spec.kind == ResidualKind::Usual) {
        LifetimeFunctions base = series_lifetime(m, sorted);
        const double log_norm = base.log_survival(spec.t);
        check_conditioning(log_norm, spec.t, clip);
        return residual_from_terms(m, {{sorted, {}, 1}}, spec.t, log_norm, "X_P,t");
    }
    const double log_norm = log_all_alive(m, spec.t);
    check_conditioning(log_norm, spec.t, clip);
    return residual_from_terms(m, {{sorted, complement_of(sorted, m.n()), 1}}, spec.t, log_norm,
                               "X*_P,t");
}

ResidualComparison compare_residuals(const TTEModel& model, const std::optional<IndexSet>& P,
                                     double t, const Grid& grid) {
    ResidualSpec usual{model, t, ResidualKind::Usual};
    ResidualSpec system_level{model, t, ResidualKind::SystemLevel};
    LifetimeFunctions rt = P ? residual_series(usual, *P) : residual_survival(usual);
    LifetimeFunctions rt_star =
        P ? residual_series(system_level, *P) : residual_survival(system_level);

    ResidualComparison cmp;
    cmp.st_le = check_st(rt, rt_star, grid);
    cmp.st_ge = check_st(rt_star, rt, grid);
    cmp.hr_le = check_hr(rt, rt_star, grid);
    cmp.hr_ge = check_hr(rt_star, rt, grid);

    PropositionInputs inputs;
    inputs.a = &model;
    PropositionGrids grids{grid, default_classification_grid(model.generator())};
    cmp.tp2 = evaluate_proposition(PropositionId::RESIDUAL_TP2, inputs, grids);

    const bool dfr = cmp.tp2.subcondition_holds("w_dfr");
    const bool ifr = cmp.tp2.subcondition_holds("w_ifr");
    // The two conditionings coincide under a constant-hazard W only for
    // series targets; for a general structure the all-alive conditioning is
    // still the better news, so only the <= direction is predicted there.
    const bool series_target = P.has_value() || model.structure().path_set_count() == 1;
    if (dfr && ifr && series_target) {
        cmp.predicted = "T_t =ST T*_t";
        cmp.agrees = cmp.st_le.verdict == Verdict::Holds && cmp.st_ge.verdict == Verdict::Holds;
    } else if (dfr) {
        cmp.predicted = "T_t <=ST T*_t";
        cmp.agrees = cmp.st_le.verdict == Verdict::Holds;
    } else if (ifr) {
        cmp.predicted = "T_t >=ST T*_t";
        cmp.agrees = cmp.st_ge.verdict == Verdict::Holds;
    } else {
        cmp.predicted = "none";
        cmp.agrees = true;
    }
    return cmp;
}

}  // namespace tterel
