#include "tterel/orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tterel/error.hpp"

namespace tterel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> eval_on(const std::vector<double>& pts,
                            const std::function<double(double)>& f) {
    std::vector<double> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] = f(pts[i]);
    return v;
}

struct ClippedPair {
    std::vector<double> pts;
    std::vector<double> log_a;
    std::vector<double> log_b;
};

// Keep grid points where both log-survivals are above the domain floor.
ClippedPair clip_to_floor(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g) {
    const double floor_log = std::log(g.domain_clip);
    ClippedPair out;
    for (double t : g.points) {
        const double la = a.log_survival(t);
        const double lb = b.log_survival(t);
        if (la >= floor_log && lb >= floor_log) {
            out.pts.push_back(t);
            out.log_a.push_back(la);
            out.log_b.push_back(lb);
        }
    }
    return out;
}

void require_min_points(std::size_t n, const char* what) {
    if (n < kMinGridPoints)
        fail(Errc::DomainCollapsed, std::string(what) + ": fewer than 16 grid points after clipping");
}

OrderReport from_monotone(StochOrder order, MonotoneReport m, const std::vector<double>& pts,
                          std::string note) {
    OrderReport rep;
    rep.order = order;
    rep.verdict = m.holds ? Verdict::Holds : Verdict::Fails;
    rep.witnesses = std::move(m.witnesses);
    rep.checked_from = pts.front();
    rep.checked_to = pts.back();
    rep.checked_points = pts.size();
    rep.note = std::move(note);
    return rep;
}

}  // namespace

const char* order_name(StochOrder o) {
    switch (o) {
        case StochOrder::ST: return "ST";
        case StochOrder::HR: return "HR";
        case StochOrder::RHR: return "RHR";
        case StochOrder::LR: return "LR";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

MonotoneReport is_monotone(const std::function<double(double)>& f, const Grid& g, Direction d) {
    validate_grid(g);
    return monotone_on_grid(g.points, eval_on(g.points, f), d, g.slack);
}

OrderReport check_st(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g) {
    validate_grid(g);
    OrderReport rep;
    rep.order = StochOrder::ST;
    rep.checked_from = g.points.front();
    rep.checked_to = g.points.back();
    rep.checked_points = g.points.size();
    for (double t : g.points) {
        const double sa = a.survival(t);
        const double sb = b.survival(t);
        if (!std::isfinite(sa) || !std::isfinite(sb))
            fail(Errc::NonFiniteValue, "survival not finite at t=" + std::to_string(t));
        if (sa > sb + g.slack) rep.witnesses.push_back({t, t, sa, sb});
    }
    rep.verdict = rep.witnesses.empty() ? Verdict::Holds : Verdict::Fails;
    return rep;
}

OrderReport check_hr(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g) {
    validate_grid(g);
    ClippedPair c = clip_to_floor(a, b, g);
    require_min_points(c.pts.size(), "check_hr");
    std::vector<double> vals(c.pts.size());
    for (std::size_t i = 0; i < c.pts.size(); ++i) vals[i] = c.log_b[i] - c.log_a[i];
    return from_monotone(StochOrder::HR,
                         monotone_on_grid(c.pts, vals, Direction::Increasing, g.slack), c.pts,
                         "log survival ratio, clipped to survival >= domain floor");
}

OrderReport check_rhr(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g) {
    validate_grid(g);
    auto dist = [](const LifetimeFunctions& lf, double t) {
        return lf.distribution ? lf.distribution(t) : -std::expm1(lf.log_survival(t));
    };
    // The left tail of a distribution is cancellation-limited; points below
    // the domain floor are dropped, mirroring the survival clip of check_hr.
    std::vector<double> pts, vals;
    for (double t : g.points) {
        const double fa = dist(a, t);
        const double fb = dist(b, t);
        if (!(fa >= g.domain_clip) || !(fb >= g.domain_clip)) continue;
        vals.push_back(std::log(fb) - std::log(fa));
        pts.push_back(t);
    }
    require_min_points(pts.size(), "check_rhr");
    return from_monotone(StochOrder::RHR,
                         monotone_on_grid(pts, vals, Direction::Increasing, g.slack), pts,
                         "log distribution ratio, clipped to distribution >= domain floor");
}

OrderReport check_lr(const LifetimeFunctions& a, const LifetimeFunctions& b, const Grid& g) {
    validate_grid(g);
    ClippedPair c = clip_to_floor(a, b, g);
    require_min_points(c.pts.size(), "check_lr");
    std::vector<double> pts, vals;
    for (std::size_t i = 0; i < c.pts.size(); ++i) {
        const double da = a.density(c.pts[i]);
        const double db = b.density(c.pts[i]);
        if (da == 0.0) {
            if (pts.empty() && db == 0.0) continue;  // before the effective support
            fail(Errc::ZeroDensity, "density of lower lifetime vanishes at t=" +
                                        std::to_string(c.pts[i]));
        }
        pts.push_back(c.pts[i]);
        vals.push_back(db / da);
    }
    require_min_points(pts.size(), "check_lr");
    return from_monotone(StochOrder::LR,
                         monotone_on_grid(pts, vals, Direction::Increasing, g.slack), pts,
                         "density ratio, clipped to survival >= domain floor");
}

AuditResult implication_audit(std::span<const OrderReport> reports) {
    auto verdict_of = [&](StochOrder o) -> std::optional<Verdict> {
        for (const auto& r : reports)
            if (r.order == o) return r.verdict;
        return std::nullopt;
    };
    AuditResult out;
    auto check_rule = [&](StochOrder stronger, StochOrder weaker) {
        const auto vs = verdict_of(stronger);
        const auto vw = verdict_of(weaker);
        if (vs && vw && *vs == Verdict::Holds && *vw == Verdict::Fails) {
            out.consistent = false;
            out.violations.push_back(std::string(order_name(stronger)) + " holds but " +
                                     order_name(weaker) + " fails");
        }
    };
    check_rule(StochOrder::LR, StochOrder::HR);
    check_rule(StochOrder::LR, StochOrder::RHR);
    check_rule(StochOrder::LR, StochOrder::ST);  // transitive, robust to gaps
    check_rule(StochOrder::HR, StochOrder::ST);
    check_rule(StochOrder::RHR, StochOrder::ST);
    return out;
}

// ---------------------------------------------------------------------------
// Propositions

const char* proposition_name(PropositionId id) {
    switch (id) {
        case PropositionId::SERIES_COMMON_W: return "SERIES_COMMON_W";
        case PropositionId::SERIES_COMMON_R: return "SERIES_COMMON_R";
        case PropositionId::PARALLEL2_COMMON_W_SHARED_MARGIN:
            return "PARALLEL2_COMMON_W_SHARED_MARGIN";
        case PropositionId::PARALLEL2_ID_COMMON_W: return "PARALLEL2_ID_COMMON_W";
        case PropositionId::PARALLEL2_COMMON_R: return "PARALLEL2_COMMON_R";
        case PropositionId::COHERENT_COMMON_R: return "COHERENT_COMMON_R";
        case PropositionId::COHERENT_COMMON_STRUCT_W: return "COHERENT_COMMON_STRUCT_W";
        case PropositionId::COHERENT_COMBINED: return "COHERENT_COMBINED";
        case PropositionId::COMPONENT_VS_SERIES: return "COMPONENT_VS_SERIES";
        case PropositionId::SERIES_VS_PARALLEL: return "SERIES_VS_PARALLEL";
        case PropositionId::SERIES_VS_PARALLEL_COMMON_R: return "SERIES_VS_PARALLEL_COMMON_R";
        case PropositionId::RESIDUAL_TP2: return "RESIDUAL_TP2";
    }
    return "?";
}

std::vector<PropositionId> all_propositions() {
    return {PropositionId::SERIES_COMMON_W,
            PropositionId::SERIES_COMMON_R,
            PropositionId::PARALLEL2_COMMON_W_SHARED_MARGIN,
            PropositionId::PARALLEL2_ID_COMMON_W,
            PropositionId::PARALLEL2_COMMON_R,
            PropositionId::COHERENT_COMMON_R,
            PropositionId::COHERENT_COMMON_STRUCT_W,
            PropositionId::COHERENT_COMBINED,
            PropositionId::COMPONENT_VS_SERIES,
            PropositionId::SERIES_VS_PARALLEL,
            PropositionId::SERIES_VS_PARALLEL_COMMON_R,
            PropositionId::RESIDUAL_TP2};
}

std::optional<PropositionId> proposition_from_name(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (PropositionId id : all_propositions())
        if (upper == proposition_name(id)) return id;
    return std::nullopt;
}

bool ConditionReport::subcondition_holds(const std::string& name) const {
    for (const auto& sc : subconditions)
        if (sc.name == name) return sc.holds;
    fail(Errc::InvalidArgument, "unknown subcondition '" + name + "'");
}

bool ConditionReport::claim_implied(StochOrder order) const {
    for (const auto& c : claims)
        if (c.order == order && c.implied) return true;
    return false;
}

namespace {

// Assembles subconditions and order claims, then resolves implications.
struct PropBuilder {
    ConditionReport rep;

    void add(std::string name, MonotoneReport m) {
        rep.subconditions.push_back({std::move(name), m.holds, std::move(m.witnesses)});
    }
    void add(std::string name, bool holds, std::vector<Witness> witnesses = {}) {
        rep.subconditions.push_back({std::move(name), holds, std::move(witnesses)});
    }
    void claim(StochOrder order, std::string statement,
               std::vector<std::vector<std::string>> requirements) {
        rep.claims.push_back({order, std::move(statement), std::move(requirements), false});
    }
    ConditionReport finish() {
        rep.all_hold = true;
        for (const auto& sc : rep.subconditions) rep.all_hold = rep.all_hold && sc.holds;
        for (auto& c : rep.claims) {
            c.implied = true;
            for (const auto& clause : c.requirements) {
                bool any = clause.empty();
                for (const auto& name : clause) any = any || rep.subcondition_holds(name);
                c.implied = c.implied && any;
            }
        }
        return rep;
    }
};

// f >= g pointwise with the shared relative slack.
MonotoneReport pointwise_ge(const std::vector<double>& pts, const std::vector<double>& f,
                            const std::vector<double>& g, double slack) {
    MonotoneReport rep;
    rep.holds = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(f[i]) || !std::isfinite(g[i]))
            fail(Errc::NonFiniteValue, "non-finite value at t=" + std::to_string(pts[i]));
        if (f[i] < g[i] - slack * std::max(1.0, std::abs(g[i]))) {
            rep.holds = false;
            rep.witnesses.push_back({pts[i], pts[i], f[i], g[i]});
        }
    }
    return rep;
}

MonotoneReport pointwise_eq(const std::vector<double>& pts, const std::vector<double>& f,
                            const std::vector<double>& g, double slack) {
    MonotoneReport rep;
    rep.holds = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (std::abs(f[i] - g[i]) > slack * std::max(1.0, std::abs(g[i]))) {
            rep.holds = false;
            rep.witnesses.push_back({pts[i], pts[i], f[i], g[i]});
        }
    return rep;
}

MonotoneReport nonnegative(const std::vector<double>& pts, const std::vector<double>& vals,
                           double slack) {
    MonotoneReport rep;
    rep.holds = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (vals[i] < -slack * std::max(1.0, std::abs(vals[i]))) {
            rep.holds = false;
            rep.witnesses.push_back({pts[i], pts[i], vals[i], 0.0});
        }
    return rep;
}

MonotoneReport both(MonotoneReport x, MonotoneReport y) {
    MonotoneReport rep;
    rep.holds = x.holds && y.holds;
    rep.witnesses = std::move(x.witnesses);
    rep.witnesses.insert(rep.witnesses.end(), y.witnesses.begin(), y.witnesses.end());
    return rep;
}

const TTEModel& need_a(const PropositionInputs& in, PropositionId id) {
    if (!in.a) fail(Errc::WrongInputShape, std::string(proposition_name(id)) + ": model A required");
    return *in.a;
}

const TTEModel& need_b(const PropositionInputs& in, PropositionId id) {
    if (!in.b) fail(Errc::WrongInputShape, std::string(proposition_name(id)) + ": model B required");
    return *in.b;
}

void need_same_generator(const TTEModel& a, const TTEModel& b, PropositionId id) {
    if (!a.generator().same_law(b.generator()))
        fail(Errc::WrongInputShape,
             std::string(proposition_name(id)) + ": models must share the generator");
}

void need_same_n(const TTEModel& a, const TTEModel& b, PropositionId id) {
    if (a.n() != b.n())
        fail(Errc::WrongInputShape,
             std::string(proposition_name(id)) + ": models must have the same component count");
}

void need_id(const TTEModel& m, PropositionId id, const char* which) {
    if (!m.identically_distributed())
        fail(Errc::WrongInputShape, std::string(proposition_name(id)) + ": model " + which +
                                        " must have identically distributed components");
}

void need_common_aging(const TTEModel& a, const TTEModel& b, PropositionId id) {
    need_id(a, id, "A");
    need_id(b, id, "B");
    if (!a.aging().front().same_law(b.aging().front()))
        fail(Errc::WrongInputShape,
             std::string(proposition_name(id)) + ": models must share the aging function");
}

void need_parallel2(const TTEModel& m, PropositionId id, const char* which) {
    if (m.n() != 2 || !(m.structure() == Structure::parallel(2)))
        fail(Errc::WrongInputShape, std::string(proposition_name(id)) + ": model " + which +
                                        " must be a two-component parallel system");
}

std::vector<double> aging_sum(const TTEModel& m, const std::vector<double>& pts) {
    std::vector<double> v(pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (const auto& r : m.aging()) v[i] += r.value(pts[i]);
    return v;
}

std::vector<double> aging_deriv_sum(const TTEModel& m, const std::vector<double>& pts) {
    std::vector<double> v(pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (const auto& r : m.aging()) v[i] += r.deriv(pts[i]);
    return v;
}

std::vector<double> ratio_of(const std::vector<double>& num, const std::vector<double>& den) {
    std::vector<double> v(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) v[i] = num[i] / den[i];
    return v;
}

// x points where both generators stay above the domain floor.
std::vector<double> clip_x_to_floor(const std::vector<double>& pts, const Generator& g1,
                                    const Generator& g2, double clip) {
    const double floor_log = std::log(clip);
    std::vector<double> out;
    for (double x : pts)
        if (g1.log_value(x) >= floor_log && g2.log_value(x) >= floor_log) out.push_back(x);
    require_min_points(out.size(), "x grid");
    return out;
}

std::vector<double> clip_x_to_phi_floor(const std::vector<double>& pts, const PhiFunction& p1,
                                        const PhiFunction& p2, double clip) {
    const double floor_log = std::log(clip);
    std::vector<double> out;
    for (double x : pts)
        if (p1.log_value(x) >= floor_log && p2.log_value(x) >= floor_log) out.push_back(x);
    require_min_points(out.size(), "x grid");
    return out;
}

// Generator-as-reliability classification flags on the x grid.
struct WFlags {
    MonotoneReport ifr, dfr, ilr, drfr;
};

WFlags generator_flags(const Generator& g, const Grid& x_grid) {
    AgingClassReport c = classify(g, x_grid);
    auto to_mono = [](ClassFlag f) { return MonotoneReport{f.holds, std::move(f.witnesses)}; };
    return {to_mono(c.ifr), to_mono(c.dfr), to_mono(c.ilr), to_mono(c.drfr)};
}

// phi ratio subconditions shared by the common-R propositions.
void add_phi_pair_conditions(PropBuilder& pb, const PhiFunction& phi1, const PhiFunction& phi2,
                             const Grid& x_grid) {
    const double slack = x_grid.slack;
    {
        std::vector<double> v1(x_grid.points.size()), v2(x_grid.points.size());
        for (std::size_t i = 0; i < x_grid.points.size(); ++i) {
            v1[i] = phi1.value(x_grid.points[i]);
            v2[i] = phi2.value(x_grid.points[i]);
        }
        pb.add("phi1_le_phi2", pointwise_ge(x_grid.points, v2, v1, slack));
    }
    std::vector<double> xc = clip_x_to_phi_floor(x_grid.points, phi1, phi2, x_grid.domain_clip);
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
            vals[i] = phi2.log_value(xc[i]) - phi1.log_value(xc[i]);
        pb.add("phi2_over_phi1_increasing",
               monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> pts, vals;
        for (double x : xc) {
            const double f1 = phi1.one_minus_value(x);
            const double f2 = phi2.one_minus_value(x);
            if (!(f1 >= x_grid.domain_clip) || !(f2 >= x_grid.domain_clip)) continue;
            pts.push_back(x);
            vals.push_back(std::log(f2) - std::log(f1));
        }
        require_min_points(pts.size(), "phibar ratio");
        pb.add("phibar2_over_phibar1_increasing",
               monotone_on_grid(pts, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i) vals[i] = phi2.deriv(xc[i]) / phi1.deriv(xc[i]);
        pb.add("dphi2_over_dphi1_increasing",
               monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }
}

// Self conditions of one phi: -phi'/phi increasing, -phi'/(1-phi) decreasing,
// -phi''/phi' nonnegative and increasing.
void add_phi_self_conditions(PropBuilder& pb, const PhiFunction& phi, const Grid& x_grid,
                             const std::string& suffix) {
    const double slack = x_grid.slack;
    std::vector<double> xc =
        clip_x_to_phi_floor(x_grid.points, phi, phi, x_grid.domain_clip);
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i) vals[i] = -phi.deriv(xc[i]) / phi.value(xc[i]);
        pb.add("neg_dphi" + suffix + "_over_phi" + suffix + "_increasing",
               monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> pts, vals;
        for (double x : xc) {
            const double f = phi.one_minus_value(x);
            if (!(f >= x_grid.domain_clip)) continue;
            pts.push_back(x);
            vals.push_back(-phi.deriv(x) / f);
        }
        require_min_points(pts.size(), "phibar self ratio");
        pb.add("neg_dphi" + suffix + "_over_phibar" + suffix + "_decreasing",
               monotone_on_grid(pts, vals, Direction::Decreasing, slack));
    }
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
            vals[i] = phi.deriv2(xc[i]) / (-phi.deriv(xc[i]));
        pb.add("neg_d2phi" + suffix + "_over_dphi" + suffix + "_nonneg_increasing",
               both(nonnegative(xc, vals, slack),
                    monotone_on_grid(xc, vals, Direction::Increasing, slack)));
    }
}

// Aging-pair conditions R >= S, R' >= S', R' <= S', S'/R' increasing on the
// time grid, for ID models with laws R (model a) and S (model b).
struct AgingPairConditions {
    std::vector<double> r, s, dr, ds;
};

AgingPairConditions eval_aging_pair(const AgingFunction& R, const AgingFunction& S,
                                    const std::vector<double>& pts) {
    AgingPairConditions c;
    c.r.resize(pts.size());
    c.s.resize(pts.size());
    c.dr.resize(pts.size());
    c.ds.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        c.r[i] = R.value(pts[i]);
        c.s[i] = S.value(pts[i]);
        c.dr[i] = R.deriv(pts[i]);
        c.ds[i] = S.deriv(pts[i]);
    }
    return c;
}

void add_aging_pair_conditions(PropBuilder& pb, const AgingPairConditions& c,
                               const std::vector<double>& pts, double slack) {
    pb.add("r_ge_s", pointwise_ge(pts, c.r, c.s, slack));
    pb.add("r_deriv_ge_s_deriv", pointwise_ge(pts, c.dr, c.ds, slack));
    pb.add("r_deriv_le_s_deriv", pointwise_ge(pts, c.ds, c.dr, slack));
    pb.add("s_deriv_over_r_deriv_increasing",
           monotone_on_grid(pts, ratio_of(c.ds, c.dr), Direction::Increasing, slack));
}

ConditionReport eval_series_common_w(const PropositionInputs& in, const PropositionGrids& grids) {
    const TTEModel& a = need_a(in, PropositionId::SERIES_COMMON_W);
    const TTEModel& b = need_b(in, PropositionId::SERIES_COMMON_W);
    need_same_generator(a, b, PropositionId::SERIES_COMMON_W);
    need_same_n(a, b, PropositionId::SERIES_COMMON_W);

    PropBuilder pb;
    pb.rep.id = PropositionId::SERIES_COMMON_W;
    const auto& pts = grids.time_grid.points;
    const double slack = grids.time_grid.slack;
    const auto A = aging_sum(a, pts), B = aging_sum(b, pts);
    const auto dA = aging_deriv_sum(a, pts), dB = aging_deriv_sum(b, pts);

    pb.add("sum_r_ge_sum_s", pointwise_ge(pts, A, B, slack));
    pb.add("sum_r_deriv_ge_sum_s_deriv", pointwise_ge(pts, dA, dB, slack));
    pb.add("sum_r_deriv_le_sum_s_deriv", pointwise_ge(pts, dB, dA, slack));
    pb.add("s_deriv_sum_over_r_deriv_sum_increasing",
           monotone_on_grid(pts, ratio_of(dB, dA), Direction::Increasing, slack));

    WFlags w = generator_flags(a.generator(), grids.x_grid);
    pb.add("w_log_concave", std::move(w.ifr));
    pb.add("wbar_log_concave", std::move(w.drfr));
    pb.add("neg_w_prime_log_concave", std::move(w.ilr));

    pb.claim(StochOrder::ST, "X_1:n <=ST Y_1:n (iff)", {{"sum_r_ge_sum_s"}});
    pb.claim(StochOrder::HR, "X_1:n <=HR Y_1:n",
             {{"sum_r_ge_sum_s"}, {"sum_r_deriv_ge_sum_s_deriv"}, {"w_log_concave"}});
    pb.claim(StochOrder::RHR, "X_1:n <=RHR Y_1:n",
             {{"sum_r_ge_sum_s"}, {"sum_r_deriv_le_sum_s_deriv"}, {"wbar_log_concave"}});
    pb.claim(StochOrder::LR, "X_1:n <=LR Y_1:n",
             {{"sum_r_ge_sum_s"},
              {"sum_r_deriv_ge_sum_s_deriv"},
              {"s_deriv_sum_over_r_deriv_sum_increasing"},
              {"neg_w_prime_log_concave"}});
    return pb.finish();
}

ConditionReport eval_series_common_r(const PropositionInputs& in, const PropositionGrids& grids) {
    const TTEModel& a = need_a(in, PropositionId::SERIES_COMMON_R);
    const TTEModel& b = need_b(in, PropositionId::SERIES_COMMON_R);
    need_same_n(a, b, PropositionId::SERIES_COMMON_R);
    for (int i = 0; i < a.n(); ++i)
        if (!a.aging()[static_cast<std::size_t>(i)].same_law(b.aging()[static_cast<std::size_t>(i)]))
            fail(Errc::WrongInputShape, "SERIES_COMMON_R: models must share all aging functions");

    const Generator& w1 = a.generator();
    const Generator& w2 = b.generator();
    PropBuilder pb;
    pb.rep.id = PropositionId::SERIES_COMMON_R;
    const double slack = grids.x_grid.slack;
    const auto& xs = grids.x_grid.points;

    {
        std::vector<double> v1(xs.size()), v2(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            v1[i] = w1.value(xs[i]);
            v2[i] = w2.value(xs[i]);
        }
        pb.add("w1_le_w2", pointwise_ge(xs, v2, v1, slack));
    }
    std::vector<double> xc = clip_x_to_floor(xs, w1, w2, grids.x_grid.domain_clip);
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
            vals[i] = w2.log_value(xc[i]) - w1.log_value(xc[i]);
        pb.add("w2_over_w1_increasing", monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> pts, vals;
        for (double x : xc) {
            const double l1 = w1.log_value(x);
            const double l2 = w2.log_value(x);
            if (l1 >= 0.0 || l2 >= 0.0) continue;
            pts.push_back(x);
            vals.push_back(std::log(-std::expm1(l2)) - std::log(-std::expm1(l1)));
        }
        require_min_points(pts.size(), "wbar ratio");
        pb.add("wbar2_over_wbar1_increasing",
               monotone_on_grid(pts, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
            vals[i] = std::exp(w2.log_neg_deriv(xc[i]) - w1.log_neg_deriv(xc[i]));
        pb.add("w2_prime_over_w1_prime_increasing",
               monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }

    pb.claim(StochOrder::ST, "X_1:n <=ST Y_1:n for all R (iff)", {{"w1_le_w2"}});
    pb.claim(StochOrder::HR, "X_1:n <=HR Y_1:n for all R (iff)", {{"w2_over_w1_increasing"}});
    pb.claim(StochOrder::RHR, "X_1:n <=RHR Y_1:n for all R (iff)",
             {{"wbar2_over_wbar1_increasing"}});
    pb.claim(StochOrder::LR, "X_1:n <=LR Y_1:n for all R (iff)",
             {{"w2_prime_over_w1_prime_increasing"}});
    return pb.finish();
}

ConditionReport eval_parallel2_shared_margin(const PropositionInputs& in,
                                             const PropositionGrids& grids) {
    const PropositionId id = PropositionId::PARALLEL2_COMMON_W_SHARED_MARGIN;
    const TTEModel& a = need_a(in, id);
    const TTEModel& b = need_b(in, id);
    need_same_generator(a, b, id);
    need_parallel2(a, id, "A");
    need_parallel2(b, id, "B");

    PropBuilder pb;
    pb.rep.id = id;
    const auto& pts = grids.time_grid.points;
    const double slack = grids.time_grid.slack;
    std::vector<double> r1(pts.size()), s1(pts.size()), r2(pts.size()), s2(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        r1[i] = a.aging()[0].value(pts[i]);
        s1[i] = b.aging()[0].value(pts[i]);
        r2[i] = a.aging()[1].value(pts[i]);
        s2[i] = b.aging()[1].value(pts[i]);
    }
    pb.add("r1_eq_s1", pointwise_eq(pts, r1, s1, slack));
    pb.add("r2_ge_s2", pointwise_ge(pts, r2, s2, slack));
    pb.claim(StochOrder::ST, "X_2:2 <=ST Y_2:2", {{"r1_eq_s1"}, {"r2_ge_s2"}});
    return pb.finish();
}

ConditionReport eval_parallel2_id_common_w(const PropositionInputs& in,
                                           const PropositionGrids& grids) {
    const PropositionId id = PropositionId::PARALLEL2_ID_COMMON_W;
    const TTEModel& a = need_a(in, id);
    const TTEModel& b = need_b(in, id);
    need_same_generator(a, b, id);
    need_parallel2(a, id, "A");
    need_parallel2(b, id, "B");
    need_id(a, id, "A");
    need_id(b, id, "B");

    PropBuilder pb;
    pb.rep.id = id;
    const auto& pts = grids.time_grid.points;
    add_aging_pair_conditions(pb, eval_aging_pair(a.aging().front(), b.aging().front(), pts), pts,
                              grids.time_grid.slack);

    const Generator& w = a.generator();
    const double slack = grids.x_grid.slack;
    std::vector<double> xc =
        clip_x_to_floor(grids.x_grid.points, w, w, grids.x_grid.domain_clip);
    {
        // (W'(2x) - W'(x)) / (2W(x) - W(2x))
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i) {
            const double x = xc[i];
            vals[i] = (w.deriv(2.0 * x) - w.deriv(x)) / (2.0 * w.value(x) - w.value(2.0 * x));
        }
        pb.add("hr_w_ratio_decreasing", monotone_on_grid(xc, vals, Direction::Decreasing, slack));
    }
    {
        // (W'(2x) - W'(x)) / (1 - 2W(x) + W(2x)); the denominator is assembled
        // from differences to avoid cancellation at small x.
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i) {
            const double x = xc[i];
            const double lw1 = w.log_value(x);
            const double lw2 = w.log_value(2.0 * x);
            const double one_minus_w = -std::expm1(lw1);
            const double w_minus_w2 = -std::exp(lw1) * std::expm1(lw2 - lw1);
            vals[i] = (w.deriv(2.0 * x) - w.deriv(x)) / (one_minus_w - w_minus_w2);
        }
        pb.add("rhr_w_ratio_decreasing", monotone_on_grid(xc, vals, Direction::Decreasing, slack));
    }
    {
        // (W''(x) - 2W''(2x)) / (W'(2x) - W'(x)), nonnegative and increasing
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i) {
            const double x = xc[i];
            vals[i] = (w.deriv2(x) - 2.0 * w.deriv2(2.0 * x)) / (w.deriv(2.0 * x) - w.deriv(x));
        }
        pb.add("lr_w_ratio_nonneg_increasing",
               both(nonnegative(xc, vals, slack),
                    monotone_on_grid(xc, vals, Direction::Increasing, slack)));
    }

    pb.claim(StochOrder::ST, "X_2:2 <=ST Y_2:2 (iff)", {{"r_ge_s"}});
    pb.claim(StochOrder::HR, "X_2:2 <=HR Y_2:2",
             {{"r_ge_s"}, {"r_deriv_ge_s_deriv"}, {"hr_w_ratio_decreasing"}});
    pb.claim(StochOrder::RHR, "X_2:2 <=RHR Y_2:2",
             {{"r_ge_s"}, {"r_deriv_le_s_deriv"}, {"rhr_w_ratio_decreasing"}});
    pb.claim(StochOrder::LR, "X_2:2 <=LR Y_2:2",
             {{"r_ge_s"},
              {"r_deriv_ge_s_deriv"},
              {"s_deriv_over_r_deriv_increasing"},
              {"lr_w_ratio_nonneg_increasing"}});
    return pb.finish();
}

ConditionReport eval_coherent_common_r(PropositionId id, const PropositionInputs& in,
                                       const PropositionGrids& grids) {
    const TTEModel& a = need_a(in, id);
    const TTEModel& b = need_b(in, id);
    need_common_aging(a, b, id);
    if (id == PropositionId::PARALLEL2_COMMON_R) {
        need_parallel2(a, id, "A");
        need_parallel2(b, id, "B");
    }

    PropBuilder pb;
    pb.rep.id = id;
    PhiFunction phi1 = make_phi(a.generator(), a.structure());
    PhiFunction phi2 = make_phi(b.generator(), b.structure());
    add_phi_pair_conditions(pb, phi1, phi2, grids.x_grid);

    pb.claim(StochOrder::ST, "T1 <=ST T2 for all R (iff)", {{"phi1_le_phi2"}});
    pb.claim(StochOrder::HR, "T1 <=HR T2 for all R (iff)", {{"phi2_over_phi1_increasing"}});
    pb.claim(StochOrder::RHR, "T1 <=RHR T2 for all R (iff)",
             {{"phibar2_over_phibar1_increasing"}});
    pb.claim(StochOrder::LR, "T1 <=LR T2 for all R (iff)", {{"dphi2_over_dphi1_increasing"}});
    return pb.finish();
}

ConditionReport eval_coherent_common_struct_w(const PropositionInputs& in,
                                              const PropositionGrids& grids) {
    const PropositionId id = PropositionId::COHERENT_COMMON_STRUCT_W;
    const TTEModel& a = need_a(in, id);
    const TTEModel& b = need_b(in, id);
    need_same_generator(a, b, id);
    need_id(a, id, "A");
    need_id(b, id, "B");
    if (!(a.structure() == b.structure()))
        fail(Errc::WrongInputShape, "COHERENT_COMMON_STRUCT_W: models must share the structure");

    PropBuilder pb;
    pb.rep.id = id;
    const auto& pts = grids.time_grid.points;
    add_aging_pair_conditions(pb, eval_aging_pair(a.aging().front(), b.aging().front(), pts), pts,
                              grids.time_grid.slack);
    PhiFunction phi = make_phi(a.generator(), a.structure());
    add_phi_self_conditions(pb, phi, grids.x_grid, "");

    pb.claim(StochOrder::ST, "T1 <=ST T2 (iff)", {{"r_ge_s"}});
    pb.claim(StochOrder::HR, "T1 <=HR T2",
             {{"r_ge_s"}, {"r_deriv_ge_s_deriv"}, {"neg_dphi_over_phi_increasing"}});
    pb.claim(StochOrder::RHR, "T1 <=RHR T2",
             {{"r_ge_s"}, {"r_deriv_le_s_deriv"}, {"neg_dphi_over_phibar_decreasing"}});
    pb.claim(StochOrder::LR, "T1 <=LR T2",
             {{"r_ge_s"},
              {"r_deriv_ge_s_deriv"},
              {"s_deriv_over_r_deriv_increasing"},
              {"neg_d2phi_over_dphi_nonneg_increasing"}});
    return pb.finish();
}

ConditionReport eval_coherent_combined(const PropositionInputs& in, const PropositionGrids& grids) {
    const PropositionId id = PropositionId::COHERENT_COMBINED;
    const TTEModel& a = need_a(in, id);
    const TTEModel& b = need_b(in, id);
    need_id(a, id, "A");
    need_id(b, id, "B");
    if (!(a.structure() == b.structure()))
        fail(Errc::WrongInputShape, "COHERENT_COMBINED: models must share the structure");

    PropBuilder pb;
    pb.rep.id = id;
    const auto& pts = grids.time_grid.points;
    add_aging_pair_conditions(pb, eval_aging_pair(a.aging().front(), b.aging().front(), pts), pts,
                              grids.time_grid.slack);
    PhiFunction phi1 = make_phi(a.generator(), a.structure());
    PhiFunction phi2 = make_phi(b.generator(), b.structure());
    add_phi_pair_conditions(pb, phi1, phi2, grids.x_grid);
    add_phi_self_conditions(pb, phi1, grids.x_grid, "1");
    add_phi_self_conditions(pb, phi2, grids.x_grid, "2");

    pb.claim(StochOrder::ST, "T1 <=ST T2 (iff)", {{"r_ge_s"}, {"phi1_le_phi2"}});
    pb.claim(StochOrder::HR, "T1 <=HR T2",
             {{"r_ge_s"},
              {"r_deriv_ge_s_deriv"},
              {"phi2_over_phi1_increasing"},
              {"neg_dphi1_over_phi1_increasing", "neg_dphi2_over_phi2_increasing"}});
    pb.claim(StochOrder::RHR, "T1 <=RHR T2",
             {{"r_ge_s"},
              {"r_deriv_le_s_deriv"},
              {"phibar2_over_phibar1_increasing"},
              {"neg_dphi1_over_phibar1_decreasing", "neg_dphi2_over_phibar2_decreasing"}});
    pb.claim(StochOrder::LR, "T1 <=LR T2",
             {{"r_ge_s"},
              {"r_deriv_ge_s_deriv"},
              {"s_deriv_over_r_deriv_increasing"},
              {"dphi2_over_dphi1_increasing"},
              {"neg_d2phi1_over_dphi1_nonneg_increasing",
               "neg_d2phi2_over_dphi2_nonneg_increasing"}});
    return pb.finish();
}

ConditionReport eval_component_vs_series(const PropositionInputs& in,
                                         const PropositionGrids& grids) {
    const PropositionId id = PropositionId::COMPONENT_VS_SERIES;
    const TTEModel& a = need_a(in, id);
    if (!in.component) fail(Errc::WrongInputShape, "COMPONENT_VS_SERIES: component index required");
    const int i = *in.component;
    if (i < 1 || i > a.n()) fail(Errc::IndexOutOfRange, "component " + std::to_string(i));
    if (a.n() < 2) fail(Errc::WrongInputShape, "COMPONENT_VS_SERIES: need n >= 2");

    PropBuilder pb;
    pb.rep.id = id;
    WFlags w = generator_flags(a.generator(), grids.x_grid);
    pb.add("w_log_concave", std::move(w.ifr));
    pb.add("neg_w_prime_log_concave", std::move(w.ilr));
    {
        // R_i''/R_i' >= (1/(n-1)) sum_{j != i} R_j''/R_j'
        const auto& pts = grids.time_grid.points;
        std::vector<double> lhs(pts.size()), rhs(pts.size(), 0.0);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const double t = pts[p];
            lhs[p] = a.aging()[static_cast<std::size_t>(i - 1)].second_deriv(t) /
                     a.aging()[static_cast<std::size_t>(i - 1)].deriv(t);
            for (int j = 1; j <= a.n(); ++j) {
                if (j == i) continue;
                rhs[p] += a.aging()[static_cast<std::size_t>(j - 1)].second_deriv(t) /
                          a.aging()[static_cast<std::size_t>(j - 1)].deriv(t);
            }
            rhs[p] /= static_cast<double>(a.n() - 1);
        }
        pb.add("cond_lr", pointwise_ge(pts, lhs, rhs, grids.time_grid.slack));
    }
    pb.claim(StochOrder::HR, "X_1:n <=HR X_i", {{"w_log_concave"}});
    pb.claim(StochOrder::LR, "X_1:n <=LR X_i", {{"neg_w_prime_log_concave"}, {"cond_lr"}});
    return pb.finish();
}

ConditionReport eval_series_vs_parallel(const PropositionInputs& in,
                                        const PropositionGrids& grids) {
    const PropositionId id = PropositionId::SERIES_VS_PARALLEL;
    const TTEModel& a = need_a(in, id);
    if (a.n() != 2) fail(Errc::WrongInputShape, "SERIES_VS_PARALLEL: need n == 2");
    PropBuilder pb;
    pb.rep.id = id;
    WFlags w = generator_flags(a.generator(), grids.x_grid);
    pb.add("w_log_concave", std::move(w.ifr));
    pb.claim(StochOrder::ST, "X_1:2 <=ST X_2:2 for any model", {});
    pb.claim(StochOrder::HR, "X_1:2 <=HR X_2:2 for all R_1,R_2", {{"w_log_concave"}});
    return pb.finish();
}

ConditionReport eval_series_vs_parallel_common_r(const PropositionInputs& in,
                                                 const PropositionGrids& grids) {
    const PropositionId id = PropositionId::SERIES_VS_PARALLEL_COMMON_R;
    const TTEModel& a = need_a(in, id);
    if (a.n() != 2) fail(Errc::WrongInputShape, "SERIES_VS_PARALLEL_COMMON_R: need n == 2");
    need_id(a, id, "A");

    PropBuilder pb;
    pb.rep.id = id;
    const Generator& w = a.generator();
    const double slack = grids.x_grid.slack;
    // Conditions involve W(2x); clip so the deeper argument stays above floor.
    const double floor_log = std::log(grids.x_grid.domain_clip);
    std::vector<double> xc;
    for (double x : grids.x_grid.points)
        if (w.log_value(2.0 * x) >= floor_log) xc.push_back(x);
    require_min_points(xc.size(), "x grid");
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
            vals[i] = w.log_value(xc[i]) - w.log_value(2.0 * xc[i]);
        pb.add("w_over_w2x_increasing", monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> pts, vals;
        for (double x : xc) {
            const double l1 = w.log_value(x);
            const double l2 = w.log_value(2.0 * x);
            if (l1 >= 0.0 || l2 >= 0.0) continue;
            pts.push_back(x);
            vals.push_back(std::log(-std::expm1(l1)) - std::log(-std::expm1(l2)));
        }
        require_min_points(pts.size(), "wbar ratio");
        pb.add("wbar_over_wbar2x_increasing",
               monotone_on_grid(pts, vals, Direction::Increasing, slack));
    }
    {
        std::vector<double> vals(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
            vals[i] = std::exp(w.log_neg_deriv(xc[i]) - w.log_neg_deriv(2.0 * xc[i]));
        pb.add("wprime_over_wprime2x_increasing",
               monotone_on_grid(xc, vals, Direction::Increasing, slack));
    }

    pb.claim(StochOrder::ST, "X_1:2 <=ST X_2:2 for all R and all W", {});
    pb.claim(StochOrder::HR, "X_1:2 <=HR X_2:2 for all R (iff)", {{"w_over_w2x_increasing"}});
    pb.claim(StochOrder::RHR, "X_1:2 <=RHR X_2:2 for all R (iff)",
             {{"wbar_over_wbar2x_increasing"}});
    pb.claim(StochOrder::LR, "X_1:2 <=LR X_2:2 for all R (iff)",
             {{"wprime_over_wprime2x_increasing"}});
    return pb.finish();
}

ConditionReport eval_residual_tp2(const PropositionInputs& in, const PropositionGrids& grids) {
    const PropositionId id = PropositionId::RESIDUAL_TP2;
    const TTEModel& a = need_a(in, id);
    PropBuilder pb;
    pb.rep.id = id;
    WFlags w = generator_flags(a.generator(), grids.x_grid);
    pb.add("w_dfr", std::move(w.dfr));
    pb.add("w_ifr", std::move(w.ifr));
    pb.claim(StochOrder::ST, "T_t <=ST T*_t for all P", {{"w_dfr"}});
    pb.claim(StochOrder::ST, "T_t >=ST T*_t for all P", {{"w_ifr"}});
    return pb.finish();
}

}  // namespace

PropositionGrids default_proposition_grids(PropositionId id, const PropositionInputs& in,
                                           std::size_t points) {
    const TTEModel& a = need_a(in, id);
    PropositionGrids grids;
    // Time grid out to the 1e-6 survival level of the slowest series system.
    double t_max = 0.0;
    for (const TTEModel* m : {in.a, in.b}) {
        if (!m) continue;
        const TTEModel& model = *m;
        auto log_series = [&model](double t) {
            double arg = 0.0;
            for (const auto& r : model.aging()) arg += r.value(t);
            return model.generator().log_value(arg);
        };
        t_max = std::max(t_max, solve_decreasing_level(log_series, std::log(1e-6)));
    }
    grids.time_grid = make_log_linear_grid(t_max, points);
    // x grid anchored at the levels of the faster-decaying generator.
    const Generator ga = a.generator();
    const std::optional<Generator> gb =
        in.b ? std::optional<Generator>(in.b->generator()) : std::nullopt;
    grids.x_grid = make_level_anchored_grid(
        [&ga, &gb](double u) {
            double x = ga.inverse(u);
            if (gb) x = std::min(x, gb->inverse(u));
            return x;
        },
        points);
    return grids;
}

ConditionReport evaluate_proposition(PropositionId id, const PropositionInputs& in,
                                     const PropositionGrids& grids) {
    validate_grid(grids.time_grid);
    validate_grid(grids.x_grid);
    switch (id) {
        case PropositionId::SERIES_COMMON_W: return eval_series_common_w(in, grids);
        case PropositionId::SERIES_COMMON_R: return eval_series_common_r(in, grids);
        case PropositionId::PARALLEL2_COMMON_W_SHARED_MARGIN:
            return eval_parallel2_shared_margin(in, grids);
        case PropositionId::PARALLEL2_ID_COMMON_W: return eval_parallel2_id_common_w(in, grids);
        case PropositionId::PARALLEL2_COMMON_R:
        case PropositionId::COHERENT_COMMON_R: return eval_coherent_common_r(id, in, grids);
        case PropositionId::COHERENT_COMMON_STRUCT_W:
            return eval_coherent_common_struct_w(in, grids);
        case PropositionId::COHERENT_COMBINED: return eval_coherent_combined(in, grids);
        case PropositionId::COMPONENT_VS_SERIES: return eval_component_vs_series(in, grids);
        case PropositionId::SERIES_VS_PARALLEL: return eval_series_vs_parallel(in, grids);
        case PropositionId::SERIES_VS_PARALLEL_COMMON_R:
            return eval_series_vs_parallel_common_r(in, grids);
        case PropositionId::RESIDUAL_TP2: return eval_residual_tp2(in, grids);
    }
    fail(Errc::InvalidArgument, "unknown proposition id");
}

}  // namespace tterel
