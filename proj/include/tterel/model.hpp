#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tterel/aging.hpp"
#include "tterel/generator.hpp"
#include "tterel/structure.hpp"

namespace tterel {

// Joint model of n dependent component lifetimes: survival
// W(R_1(x_1) + ... + R_n(x_n)) plus a coherent structure.
class TTEModel {
  public:
    TTEModel(Generator generator, std::vector<AgingFunction> aging, Structure structure);

    const Generator& generator() const { return generator_; }
    const std::vector<AgingFunction>& aging() const { return aging_; }
    const Structure& structure() const { return structure_; }
    int n() const { return structure_.n(); }

    // True when all aging functions are structurally the same law.
    bool identically_distributed() const;

  private:
    Generator generator_;
    std::vector<AgingFunction> aging_;
    Structure structure_;
};

// Survival, density and hazard evaluators of one scalar lifetime.
// hazard reports +inf once survival underflows below 1e-300.
// distribution evaluates 1 - survival through expm1-style term sums, which
// stays accurate in the left tail where 1 - survival cancels; it may be
// empty, in which case callers fall back to -expm1(log_survival).
struct LifetimeFunctions {
    std::string label;
    std::function<double(double)> survival;
    std::function<double(double)> log_survival;
    std::function<double(double)> density;
    std::function<double(double)> hazard;
    std::function<double(double)> distribution;
};

// One inclusion-exclusion summand of a (possibly residual) survival sum:
// coefficient * W( sum_{k in advanced} R_k(u + base) + sum_{k in frozen} R_k(base) ).
struct LifetimeTerm {
    IndexSet advanced;
    IndexSet frozen;
    long long coefficient = 0;
};

// Signed sum of W terms with a common normalizer, evaluated with the largest
// term's log as pivot so that tails survive far past double underflow.
class SignedSurvivalSum {
  public:
    SignedSurvivalSum(Generator generator, std::vector<AgingFunction> aging,
                      std::vector<LifetimeTerm> terms, double base_time = 0.0,
                      double log_normalizer = 0.0);

    double survival(double u) const;
    double log_survival(double u) const;
    double distribution(double u) const;  // 1 - survival via expm1 term sums
    double density(double u) const;
    double hazard(double u) const;

  private:
    struct Pivot {
        double max_log = 0.0;
        double scaled_sum = 0.0;
    };
    Pivot survival_pivot(double u) const;
    Pivot density_pivot(double u) const;
    double term_argument(const LifetimeTerm& term, double u) const;

    Generator generator_;
    std::vector<AgingFunction> aging_;
    std::vector<LifetimeTerm> terms_;
    double base_time_;
    double log_normalizer_;
};

LifetimeFunctions lifetime_from_sum(std::shared_ptr<const SignedSurvivalSum> core,
                                    std::string label);

// W(R_1(x_1)+...+R_n(x_n)); all times must be >= 0.
double joint_survival(const TTEModel& m, std::span<const double> x);

// Lifetime functions of component i (1-based).
LifetimeFunctions marginal(const TTEModel& m, int i);

// Lifetime functions of the series system over the components in P.
LifetimeFunctions series_lifetime(const TTEModel& m, const IndexSet& P);

// Lifetime functions of the parallel system over all n components.
LifetimeFunctions parallel_lifetime(const TTEModel& m);

// Lifetime functions of the model's own structure (inclusion-exclusion path).
LifetimeFunctions system_lifetime(const TTEModel& m);

// The one-argument system transform phi(x) = sum_k c_k W(k x) of a structure
// with identically distributed components, with derivatives.
class PhiFunction {
  public:
    PhiFunction(Generator generator, std::map<int, long long> coefficients);

    double value(double x) const;
    double log_value(double x) const;
    double one_minus_value(double x) const;  // 1 - phi via expm1 term sums
    double deriv(double x) const;   // sum_k c_k k W'(kx)
    double deriv2(double x) const;  // sum_k c_k k^2 W''(kx)
    const std::map<int, long long>& coefficients() const { return coefficients_; }
    const Generator& generator() const { return generator_; }

  private:
    Generator generator_;
    std::map<int, long long> coefficients_;
};

// phi for any generator/structure pair.
PhiFunction make_phi(const Generator& g, const Structure& s);

// phi of the model's structure; requires identically distributed components
// (Error(NotIdenticallyDistributed) otherwise).
PhiFunction id_phi(const TTEModel& m);

// System lifetime through the collapsed phi(R(t)) route; requires ID.
LifetimeFunctions id_system_lifetime(const TTEModel& m);

}  // namespace tterel
