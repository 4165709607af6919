#pragma once

#include <optional>
#include <string>

#include "tterel/model.hpp"
#include "tterel/orders.hpp"

namespace tterel {

// Conditioning mode of a residual lifetime at inspection time t:
// Usual       (T - t | T > t)            system known to work at t
// SystemLevel (T - t | X_{1:n} > t)      all components known to work at t
enum class ResidualKind { Usual, SystemLevel };

struct ResidualSpec {
    TTEModel model;
    double t = 0.0;
    ResidualKind kind = ResidualKind::Usual;
};

// Residual lifetime functions (in the remaining-life variable x >= 0) of the
// model's own system. Throws Error(SurvivalUnderflow) when the conditioning
// event's probability is below the clip floor.
LifetimeFunctions residual_survival(const ResidualSpec& spec);

// Residual lifetime of the single component i under the chosen conditioning.
LifetimeFunctions residual_component(const ResidualSpec& spec, int i);

// Residual lifetime of the series system over P under the chosen conditioning.
LifetimeFunctions residual_series(const ResidualSpec& spec, const IndexSet& P);

// Grid comparison of T_t against T*_t for the system (or the series over P
// when given), with the direction predicted from the DFR/IFR class of W.
struct ResidualComparison {
    OrderReport st_le;  // T_t <=ST T*_t
    OrderReport st_ge;  // T*_t <=ST T_t
    OrderReport hr_le;  // T_t <=HR T*_t
    OrderReport hr_ge;  // T*_t <=HR T_t
    ConditionReport tp2;
    std::string predicted;  // "T_t <=ST T*_t" | "T_t >=ST T*_t" | "T_t =ST T*_t" | "none"
    bool agrees = false;
};

ResidualComparison compare_residuals(const TTEModel& model, const std::optional<IndexSet>& P,
                                     double t, const Grid& grid);

}  // namespace tterel
