#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tterel/grid.hpp"
#include "tterel/model.hpp"

namespace tterel {

enum class StochOrder { ST, HR, RHR, LR };
enum class Verdict { Holds, Fails, Inconclusive };

const char* order_name(StochOrder o);
const char* verdict_name(Verdict v);

// Outcome of one grid-certified order check between two lifetimes.
// "holds" means: no violation on this grid at this slack.
struct OrderReport {
    StochOrder order = StochOrder::ST;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Witness> witnesses;
    double checked_from = 0.0;
    double checked_to = 0.0;
    std::size_t checked_points = 0;
    std::string note;
};

// f monotone on the grid per the shared slack rule.
MonotoneReport is_monotone(const std::function<double(double)>& f, const Grid& g, Direction d);

// a <= b in the usual stochastic order: survival_a <= survival_b + slack pointwise.
OrderReport check_st(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g);

// a <= b in the hazard rate order: log survival_b - log survival_a increasing
// over the part of the grid where both survivals exceed the domain floor.
OrderReport check_hr(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g);

// a <= b in the reversed hazard rate order: (1-survival_b)/(1-survival_a)
// increasing, distribution values taken exp(m1)-style from log survival.
OrderReport check_rhr(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g);

// a <= b in the likelihood ratio order: density_b/density_a increasing.
OrderReport check_lr(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g);

struct AuditResult {
    bool consistent = true;
    std::vector<std::string> violations;
};

// Sanity check of the one-way implications LR => HR, LR => RHR, HR => ST,
// RHR => ST across reports for a single ordered pair on one grid.
// Inconclusive verdicts do not participate.
AuditResult implication_audit(std::span<const OrderReport> reports);

// ---------------------------------------------------------------------------
// Sufficient-condition checkers

enum class PropositionId {
    SERIES_COMMON_W,
    SERIES_COMMON_R,
    PARALLEL2_COMMON_W_SHARED_MARGIN,
    PARALLEL2_ID_COMMON_W,
    PARALLEL2_COMMON_R,
    COHERENT_COMMON_R,
    COHERENT_COMMON_STRUCT_W,
    COHERENT_COMBINED,
    COMPONENT_VS_SERIES,
    SERIES_VS_PARALLEL,
    SERIES_VS_PARALLEL_COMMON_R,
    RESIDUAL_TP2,
};

const char* proposition_name(PropositionId id);
std::optional<PropositionId> proposition_from_name(const std::string& name);
std::vector<PropositionId> all_propositions();

struct Subcondition {
    std::string name;
    bool holds = false;
    std::vector<Witness> witnesses;
};

// One order the proposition can guarantee, with the subconditions it needs.
// requirements is a conjunction of disjunctions over subcondition names.
struct OrderClaim {
    StochOrder order = StochOrder::ST;
    std::string statement;
    std::vector<std::vector<std::string>> requirements;
    bool implied = false;
};

struct ConditionReport {
    PropositionId id = PropositionId::SERIES_COMMON_W;
    std::vector<Subcondition> subconditions;
    std::vector<OrderClaim> claims;
    bool all_hold = false;  // conjunction of every subcondition

    bool subcondition_holds(const std::string& name) const;
    bool claim_implied(StochOrder order) const;
};

// Model pair (or single model) a proposition is evaluated on.
// Shape requirements are validated per id (Error(WrongInputShape)).
struct PropositionInputs {
    const TTEModel* a = nullptr;
    const TTEModel* b = nullptr;
    std::optional<int> component;  // COMPONENT_VS_SERIES only
};

// Grids for the two condition domains: functions of time t, and functions of
// the generator argument x.
struct PropositionGrids {
    Grid time_grid;
    Grid x_grid;
};

// Default grids: time grid from the lead model's series survival at the 1e-6
// level, x grid from the generator(s) at the 1e-9 level.
PropositionGrids default_proposition_grids(PropositionId id, const PropositionInputs& in,
                                           std::size_t points = 1024);

ConditionReport evaluate_proposition(PropositionId id, const PropositionInputs& in,
                                     const PropositionGrids& grids);

}  // namespace tterel
