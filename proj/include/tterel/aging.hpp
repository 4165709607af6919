#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tterel/generator.hpp"

namespace tterel {

enum class AgingFamily { Linear, ExpMinusOne, Power, Custom };

const char* family_name(AgingFamily f);

// A cumulative-hazard-like transform R : [0,inf) -> [0,inf), strictly
// increasing with R(0) = 0 and R(inf) = inf.
//
// Catalog families have closed-form derivatives and inverses:
//   linear        R(t) = c t
//   exp_minus_one R(t) = (e^{ct} - 1)/s
//   power         R(t) = (t/lambda)^k
// Custom instances wrap an arbitrary marginal; their derivative falls back
// to central differences and their inverse to bracketed bisection.
class AgingFunction {
  public:
    static AgingFunction linear(double c);
    static AgingFunction exp_minus_one(double c, double s);
    static AgingFunction power(double lambda, double k);
    static AgingFunction make(const std::string& family, const std::map<std::string, double>& params);

    AgingFamily family() const { return family_; }
    const std::vector<double>& params() const { return params_; }
    std::string name() const;

    double value(double t) const;        // R(t)
    double deriv(double t) const;        // R'(t)
    bool has_closed_second_deriv() const { return family_ != AgingFamily::Custom; }
    double second_deriv(double t) const; // R''(t); finite differences of R' for custom
    double inverse(double y) const;      // R^-1(y), y >= 0

    // Structural identity: same family and parameters. Two independently
    // built custom agings are never the same law, even if numerically equal.
    bool same_law(const AgingFunction& other) const;

  private:
    friend AgingFunction aging_from_marginal(const Generator&, std::function<double(double)>,
                                             std::function<double(double)>);
    AgingFunction(AgingFamily f, std::vector<double> p) : family_(f), params_(std::move(p)) {}

    AgingFamily family_;
    std::vector<double> params_;
    std::function<double(double)> custom_value_;
    std::function<double(double)> custom_deriv_;  // may be empty
    std::uint64_t custom_id_ = 0;
};

// Builds R = W^-1 o survival from a marginal reliability function.
// survival(0) must equal 1 within 1e-12 (Error(InvalidMarginal) otherwise).
// If survival_deriv is provided it is used for R' via the inverse-function
// rule; otherwise R' uses central differences with step 1e-6 * max(1, t).
AgingFunction aging_from_marginal(const Generator& g, std::function<double(double)> survival,
                                  std::function<double(double)> survival_deriv = {});

}  // namespace tterel
