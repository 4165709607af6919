#include "tterel/aging.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "tterel/error.hpp"

namespace tterel {

namespace {

std::atomic<std::uint64_t> next_custom_id{1};

void require_param(bool ok, const std::string& family, const std::string& what) {
    if (!ok) fail(Errc::ParamOutOfRange, family + ": " + what);
}

double fd_step(double t) { return 1e-6 * std::max(1.0, t); }

}  // namespace

const char* family_name(AgingFamily f) {
    switch (f) {
        case AgingFamily::Linear: return "linear";
        case AgingFamily::ExpMinusOne: return "exp_minus_one";
        case AgingFamily::Power: return "power";
        case AgingFamily::Custom: return "from_marginal";
    }
    return "?";
}

AgingFunction AgingFunction::linear(double c) {
    require_param(c > 0.0 && std::isfinite(c), "linear", "c must be > 0");
    return AgingFunction(AgingFamily::Linear, {c});
}

AgingFunction AgingFunction::exp_minus_one(double c, double s) {
    require_param(c > 0.0 && std::isfinite(c), "exp_minus_one", "c must be > 0");
    require_param(s > 0.0 && std::isfinite(s), "exp_minus_one", "s must be > 0");
    return AgingFunction(AgingFamily::ExpMinusOne, {c, s});
}

AgingFunction AgingFunction::power(double lambda, double k) {
    require_param(lambda > 0.0 && std::isfinite(lambda), "power", "lambda must be > 0");
    require_param(k > 0.0 && std::isfinite(k), "power", "k must be > 0");
    return AgingFunction(AgingFamily::Power, {lambda, k});
}

AgingFunction AgingFunction::make(const std::string& family,
                                  const std::map<std::string, double>& params) {
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            fail(Errc::ParamOutOfRange, family + ": missing parameter '" + std::string(key) + "'");
        return it->second;
    };
    auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : params) {
            bool ok = false;
            for (const char* a : allowed)
                if (key == a) ok = true;
            if (!ok) fail(Errc::ParamOutOfRange, family + ": unknown parameter '" + key + "'");
        }
    };
    if (family == "linear") {
        check_keys({"c"});
        return linear(get("c"));
    }
    if (family == "exp_minus_one") {
        check_keys({"c", "s"});
        return exp_minus_one(get("c"), get("s"));
    }
    if (family == "power") {
        check_keys({"lambda", "k"});
        return power(get("lambda"), get("k"));
    }
    fail(Errc::ParamOutOfRange, "unknown aging family '" + family + "'");
}

std::string AgingFunction::name() const {
    std::ostringstream os;
    os << family_name(family_);
    if (!params_.empty()) {
        os << "(";
        for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
        os << ")";
    }
    return os.str();
}

double AgingFunction::value(double t) const {
    if (t < 0.0) fail(Errc::NegativeTime, "aging argument must be >= 0");
    switch (family_) {
        case AgingFamily::Linear:
            return params_[0] * t;
        case AgingFamily::ExpMinusOne:
            return std::expm1(params_[0] * t) / params_[1];
        case AgingFamily::Power:
            return std::pow(t / params_[0], params_[1]);
        case AgingFamily::Custom:
            return custom_value_(t);
    }
    return 0.0;
}

double AgingFunction::deriv(double t) const {
    if (t < 0.0) fail(Errc::NegativeTime, "aging argument must be >= 0");
    switch (family_) {
        case AgingFamily::Linear:
            return params_[0];
        case AgingFamily::ExpMinusOne:
            return params_[0] * std::exp(params_[0] * t) / params_[1];
        case AgingFamily::Power: {
            const double lam = params_[0], k = params_[1];
            if (t == 0.0) {
                if (k > 1.0) return 0.0;
                if (k == 1.0) return 1.0 / lam;
                return std::numeric_limits<double>::infinity();
            }
            return (k / lam) * std::pow(t / lam, k - 1.0);
        }
        case AgingFamily::Custom: {
            if (custom_deriv_) return custom_deriv_(t);
            const double h = fd_step(t);
            if (t < h) return (custom_value_(t + h) - custom_value_(t)) / h;
            return (custom_value_(t + h) - custom_value_(t - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

double AgingFunction::second_deriv(double t) const {
    if (t < 0.0) fail(Errc::NegativeTime, "aging argument must be >= 0");
    switch (family_) {
        case AgingFamily::Linear:
            return 0.0;
        case AgingFamily::ExpMinusOne:
            return params_[0] * params_[0] * std::exp(params_[0] * t) / params_[1];
        case AgingFamily::Power: {
            const double lam = params_[0], k = params_[1];
            if (t == 0.0) {
                if (k > 2.0 || k == 1.0) return 0.0;
                if (k == 2.0) return 2.0 / (lam * lam);
                return std::numeric_limits<double>::infinity();
            }
            return (k * (k - 1.0) / (lam * lam)) * std::pow(t / lam, k - 2.0);
        }
        case AgingFamily::Custom: {
            const double h = fd_step(t);
            if (t < h) return (deriv(t + h) - deriv(t)) / h;
            return (deriv(t + h) - deriv(t - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

double AgingFunction::inverse(double y) const {
    if (y < 0.0) fail(Errc::DomainError, "aging inverse argument must be >= 0");
    switch (family_) {
        case AgingFamily::Linear:
            return y / params_[0];
        case AgingFamily::ExpMinusOne:
            return std::log1p(params_[1] * y) / params_[0];
        case AgingFamily::Power:
            return params_[0] * std::pow(y, 1.0 / params_[1]);
        case AgingFamily::Custom: {
            if (y == 0.0) return 0.0;
            double hi = 1.0, lo = 0.0;
            int expansions = 0;
            while (custom_value_(hi) < y) {
                lo = hi;
                hi *= 4.0;
                if (++expansions > 400 || !std::isfinite(hi))
                    fail(Errc::RootFindFailure, "aging inverse bracket not found");
            }
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                (custom_value_(mid) < y ? lo : hi) = mid;
                if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
            }
            return 0.5 * (lo + hi);
        }
    }
    return 0.0;
}

bool AgingFunction::same_law(const AgingFunction& other) const {
    if (family_ != other.family_ || params_ != other.params_) return false;
    if (family_ == AgingFamily::Custom) return custom_id_ == other.custom_id_;
    return true;
}

AgingFunction aging_from_marginal(const Generator& g, std::function<double(double)> survival,
                                  std::function<double(double)> survival_deriv) {
    if (!survival) fail(Errc::InvalidMarginal, "null survival function");
    const double s0 = survival(0.0);
    if (!(std::abs(s0 - 1.0) <= 1e-12))
        fail(Errc::InvalidMarginal, "survival(0) = " + std::to_string(s0) + ", expected 1");
    AgingFunction r(AgingFamily::Custom, {});
    r.custom_id_ = next_custom_id.fetch_add(1);
    Generator gen = g;
    auto surv = std::move(survival);
    r.custom_value_ = [gen, surv](double t) { return gen.inverse(surv(t)); };
    if (survival_deriv) {
        auto sderiv = std::move(survival_deriv);
        // R'(t) = S'(t) / W'(R(t)) by the inverse-function rule.
        r.custom_deriv_ = [gen, surv, sderiv](double t) {
            return sderiv(t) / gen.deriv(gen.inverse(surv(t)));
        };
    }
    return r;
}

}  // namespace tterel
