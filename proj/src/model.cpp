#include "tterel/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tterel/error.hpp"

namespace tterel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHazardUnderflowLog = -690.0;  // ~ln(1e-300)

void check_index_set(const IndexSet& P, int n) {
    if (P.empty()) fail(Errc::EmptySet, "empty component set");
    for (int idx : P)
        if (idx < 1 || idx > n)
            fail(Errc::IndexOutOfRange,
                 "component " + std::to_string(idx) + " outside 1.." + std::to_string(n));
}

std::string set_label(const IndexSet& P) {
    std::string s = "{";
    for (std::size_t i = 0; i < P.size(); ++i) s += (i ? "," : "") + std::to_string(P[i]);
    return s + "}";
}

}  // namespace

TTEModel::TTEModel(Generator generator, std::vector<AgingFunction> aging, Structure structure)
    : generator_(std::move(generator)), aging_(std::move(aging)), structure_(std::move(structure)) {
    if (aging_.size() != static_cast<std::size_t>(structure_.n()))
        fail(Errc::DimensionMismatch,
             "model has " + std::to_string(aging_.size()) + " aging functions for n=" +
                 std::to_string(structure_.n()) + " components");
}

bool TTEModel::identically_distributed() const {
    for (std::size_t i = 1; i < aging_.size(); ++i)
        if (!aging_[i].same_law(aging_[0])) return false;
    return true;
}

SignedSurvivalSum::SignedSurvivalSum(Generator generator, std::vector<AgingFunction> aging,
                                     std::vector<LifetimeTerm> terms, double base_time,
                                     double log_normalizer)
    : generator_(std::move(generator)),
      aging_(std::move(aging)),
      terms_(std::move(terms)),
      base_time_(base_time),
      log_normalizer_(log_normalizer) {
    // Every inclusion-exclusion expansion has unit coefficient sum; the
    // distribution() evaluator relies on it.
    long long coef_sum = 0;
    for (const auto& term : terms_) coef_sum += term.coefficient;
    if (coef_sum != 1) fail(Errc::InvalidArgument, "term coefficients must sum to 1");
}

double SignedSurvivalSum::term_argument(const LifetimeTerm& term, double u) const {
    double arg = 0.0;
    for (int k : term.advanced) arg += aging_[static_cast<std::size_t>(k - 1)].value(u + base_time_);
    for (int k : term.frozen) arg += aging_[static_cast<std::size_t>(k - 1)].value(base_time_);
    return arg;
}

SignedSurvivalSum::Pivot SignedSurvivalSum::survival_pivot(double u) const {
    std::vector<double> logs(terms_.size());
    double max_log = -kInf;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        logs[j] = generator_.log_value(term_argument(terms_[j], u));
        max_log = std::max(max_log, logs[j]);
    }
    if (max_log == -kInf) return {-kInf, 0.0};
    double sum = 0.0;
    for (std::size_t j = 0; j < terms_.size(); ++j)
        sum += static_cast<double>(terms_[j].coefficient) * std::exp(logs[j] - max_log);
    return {max_log, sum};
}

SignedSurvivalSum::Pivot SignedSurvivalSum::density_pivot(double u) const {
    std::vector<double> logs(terms_.size(), -kInf);
    double max_log = -kInf;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        double darg = 0.0;
        for (int k : terms_[j].advanced)
            darg += aging_[static_cast<std::size_t>(k - 1)].deriv(u + base_time_);
        if (darg == 0.0) continue;
        logs[j] = generator_.log_neg_deriv(term_argument(terms_[j], u)) + std::log(darg);
        max_log = std::max(max_log, logs[j]);
    }
    if (max_log == kInf) return {kInf, 1.0};
    if (max_log == -kInf) return {-kInf, 0.0};
    double sum = 0.0;
    for (std::size_t j = 0; j < terms_.size(); ++j)
        if (logs[j] > -kInf)
            sum += static_cast<double>(terms_[j].coefficient) * std::exp(logs[j] - max_log);
    return {max_log, sum};
}

double SignedSurvivalSum::survival(double u) const {
    const Pivot p = survival_pivot(u);
    return std::max(0.0, std::exp(p.max_log - log_normalizer_) * p.scaled_sum);
}

double SignedSurvivalSum::log_survival(double u) const {
    const Pivot p = survival_pivot(u);
    if (!(p.scaled_sum > 0.0)) return -kInf;
    return p.max_log + std::log(p.scaled_sum) - log_normalizer_;
}

double SignedSurvivalSum::distribution(double u) const {
    // 1 - sum_j c_j W_j / norm = sum_j c_j (1 - W_j / norm); the per-term
    // expm1 keeps left tails accurate where survival is still close to 1.
    double sum = 0.0;
    for (const auto& term : terms_)
        sum += static_cast<double>(term.coefficient) *
               (-std::expm1(generator_.log_value(term_argument(term, u)) - log_normalizer_));
    return std::min(1.0, std::max(0.0, sum));
}

double SignedSurvivalSum::density(double u) const {
    const Pivot p = density_pivot(u);
    if (p.max_log == kInf) return kInf;
    return std::max(0.0, std::exp(p.max_log - log_normalizer_) * p.scaled_sum);
}

double SignedSurvivalSum::hazard(double u) const {
    const Pivot s = survival_pivot(u);
    if (!(s.scaled_sum > 0.0)) return kInf;
    const double log_surv = s.max_log + std::log(s.scaled_sum) - log_normalizer_;
    if (log_surv < kHazardUnderflowLog) return kInf;
    const Pivot d = density_pivot(u);
    if (d.max_log == kInf) return kInf;
    if (d.max_log == -kInf) return 0.0;
    return std::max(0.0, std::exp(d.max_log - s.max_log) * (d.scaled_sum / s.scaled_sum));
}

LifetimeFunctions lifetime_from_sum(std::shared_ptr<const SignedSurvivalSum> core,
                                    std::string label) {
    LifetimeFunctions lf;
    lf.label = std::move(label);
    lf.survival = [core](double t) { return core->survival(t); };
    lf.log_survival = [core](double t) { return core->log_survival(t); };
    lf.density = [core](double t) { return core->density(t); };
    lf.hazard = [core](double t) { return core->hazard(t); };
    lf.distribution = [core](double t) { return core->distribution(t); };
    return lf;
}

double joint_survival(const TTEModel& m, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(m.n()))
        fail(Errc::DimensionMismatch, "joint_survival: argument length != n");
    double arg = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) fail(Errc::NegativeTime, "joint_survival: negative time");
        arg += m.aging()[i].value(x[i]);
    }
    return m.generator().value(arg);
}

LifetimeFunctions marginal(const TTEModel& m, int i) {
    if (i < 1 || i > m.n()) fail(Errc::IndexOutOfRange, "marginal: component " + std::to_string(i));
    auto core = std::make_shared<const SignedSurvivalSum>(
        m.generator(), m.aging(), std::vector<LifetimeTerm>{{{i}, {}, 1}});
    return lifetime_from_sum(std::move(core), "X_" + std::to_string(i));
}

LifetimeFunctions series_lifetime(const TTEModel& m, const IndexSet& P) {
    check_index_set(P, m.n());
    IndexSet sorted = P;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::string label = "series" + set_label(sorted);
    auto core = std::make_shared<const SignedSurvivalSum>(
        m.generator(), m.aging(), std::vector<LifetimeTerm>{{sorted, {}, 1}});
    return lifetime_from_sum(std::move(core), std::move(label));
}

namespace {

std::vector<LifetimeTerm> structure_terms(const Structure& s) {
    std::vector<LifetimeTerm> terms;
    for (const auto& t : signed_union_terms(s)) terms.push_back({t.indices, {}, t.coefficient});
    return terms;
}

}  // namespace

LifetimeFunctions parallel_lifetime(const TTEModel& m) {
    auto core = std::make_shared<const SignedSurvivalSum>(m.generator(), m.aging(),
                                                          structure_terms(Structure::parallel(m.n())));
    return lifetime_from_sum(std::move(core), "parallel{1.." + std::to_string(m.n()) + "}");
}

LifetimeFunctions system_lifetime(const TTEModel& m) {
    auto core = std::make_shared<const SignedSurvivalSum>(m.generator(), m.aging(),
                                                          structure_terms(m.structure()));
    return lifetime_from_sum(std::move(core), "system");
}

PhiFunction::PhiFunction(Generator generator, std::map<int, long long> coefficients)
    : generator_(std::move(generator)), coefficients_(std::move(coefficients)) {}

double PhiFunction::value(double x) const {
    double max_log = -kInf;
    for (const auto& [k, c] : coefficients_)
        max_log = std::max(max_log, generator_.log_value(k * x));
    if (max_log == -kInf) return 0.0;
    double sum = 0.0;
    for (const auto& [k, c] : coefficients_)
        sum += static_cast<double>(c) * std::exp(generator_.log_value(k * x) - max_log);
    return std::max(0.0, std::exp(max_log) * sum);
}

double PhiFunction::log_value(double x) const {
    double max_log = -kInf;
    for (const auto& [k, c] : coefficients_)
        max_log = std::max(max_log, generator_.log_value(k * x));
    if (max_log == -kInf) return -kInf;
    double sum = 0.0;
    for (const auto& [k, c] : coefficients_)
        sum += static_cast<double>(c) * std::exp(generator_.log_value(k * x) - max_log);
    if (!(sum > 0.0)) return -kInf;
    return max_log + std::log(sum);
}

double PhiFunction::one_minus_value(double x) const {
    // sum_k c_k (1 - W(kx)); accurate in the left tail where 1 - phi cancels
    double sum = 0.0;
    for (const auto& [k, c] : coefficients_)
        sum += static_cast<double>(c) * (-std::expm1(generator_.log_value(k * x)));
    return std::min(1.0, std::max(0.0, sum));
}

double PhiFunction::deriv(double x) const {
    double max_log = -kInf;
    for (const auto& [k, c] : coefficients_)
        max_log = std::max(max_log, generator_.log_neg_deriv(k * x));
    if (max_log == kInf) return -kInf;
    if (max_log == -kInf) return 0.0;
    double sum = 0.0;
    for (const auto& [k, c] : coefficients_)
        sum += static_cast<double>(c * k) * std::exp(generator_.log_neg_deriv(k * x) - max_log);
    return -std::exp(max_log) * sum;
}

double PhiFunction::deriv2(double x) const {
    double sum = 0.0;
    for (const auto& [k, c] : coefficients_)
        sum += static_cast<double>(c * k * k) * generator_.deriv2(k * x);
    return sum;
}

PhiFunction make_phi(const Generator& g, const Structure& s) {
    return PhiFunction(g, cardinality_coefficients(s));
}

PhiFunction id_phi(const TTEModel& m) {
    if (!m.identically_distributed())
        fail(Errc::NotIdenticallyDistributed,
             "phi collapse requires identically distributed components");
    return make_phi(m.generator(), m.structure());
}

LifetimeFunctions id_system_lifetime(const TTEModel& m) {
    auto phi = std::make_shared<const PhiFunction>(id_phi(m));
    auto aging = std::make_shared<const AgingFunction>(m.aging().front());
    LifetimeFunctions lf;
    lf.label = "system(phi)";
    lf.survival = [phi, aging](double t) { return phi->value(aging->value(t)); };
    lf.log_survival = [phi, aging](double t) { return phi->log_value(aging->value(t)); };
    lf.density = [phi, aging](double t) {
        return -aging->deriv(t) * phi->deriv(aging->value(t));
    };
    lf.hazard = [phi, aging](double t) {
        const double ls = phi->log_value(aging->value(t));
        if (ls < kHazardUnderflowLog) return kInf;
        return -aging->deriv(t) * phi->deriv(aging->value(t)) / std::exp(ls);
    };
    return lf;
}

}  // namespace tterel
