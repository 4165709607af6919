#include "tterel/generator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tterel/error.hpp"

namespace tterel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_param(bool ok, const std::string& family, const std::string& what) {
    if (!ok) fail(Errc::ParamOutOfRange, family + ": " + what);
}

double get_param(const std::map<std::string, double>& params, const std::string& family,
                 const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) fail(Errc::ParamOutOfRange, family + ": missing parameter '" + key + "'");
    return it->second;
}

void check_no_extra(const std::map<std::string, double>& params, const std::string& family,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(Errc::ParamOutOfRange, family + ": unknown parameter '" + key + "'");
    }
}

}  // namespace

const char* family_name(GenFamily f) {
    switch (f) {
        case GenFamily::Independence: return "independence";
        case GenFamily::Clayton: return "clayton";
        case GenFamily::GumbelHougaard: return "gumbel_hougaard";
        case GenFamily::GumbelBarnett: return "gumbel_barnett";
        case GenFamily::Amh: return "amh";
        case GenFamily::Frank: return "frank";
    }
    return "?";
}

Generator Generator::independence() { return Generator(GenFamily::Independence, {}); }

Generator Generator::clayton(double a, double b) {
    require_param(a > 0.0 && std::isfinite(a), "clayton", "a must be > 0");
    require_param(b > 0.0 && std::isfinite(b), "clayton", "b must be > 0");
    return Generator(GenFamily::Clayton, {a, b});
}

Generator Generator::gumbel_hougaard(double theta) {
    require_param(theta >= 1.0 && std::isfinite(theta), "gumbel_hougaard", "theta must be >= 1");
    return Generator(GenFamily::GumbelHougaard, {theta});
}

Generator Generator::gumbel_barnett(double theta) {
    require_param(theta > 0.0 && theta <= 1.0, "gumbel_barnett", "theta must be in (0,1]");
    return Generator(GenFamily::GumbelBarnett, {theta});
}

Generator Generator::amh(double theta) {
    require_param(theta >= -1.0 && theta < 0.0, "amh", "theta must be in [-1,0)");
    return Generator(GenFamily::Amh, {theta});
}

Generator Generator::frank(double theta) {
    require_param(theta <= 0.0 && std::isfinite(theta), "frank", "theta must be <= 0");
    if (theta == 0.0) return independence();  // removable singularity
    return Generator(GenFamily::Frank, {theta});
}

Generator Generator::make(const std::string& family, const std::map<std::string, double>& params) {
    if (family == "independence") {
        check_no_extra(params, family, {});
        return independence();
    }
    if (family == "clayton") {
        check_no_extra(params, family, {"a", "b"});
        return clayton(get_param(params, family, "a"), get_param(params, family, "b"));
    }
    if (family == "gumbel_hougaard") {
        check_no_extra(params, family, {"theta"});
        return gumbel_hougaard(get_param(params, family, "theta"));
    }
    if (family == "gumbel_barnett") {
        check_no_extra(params, family, {"theta"});
        return gumbel_barnett(get_param(params, family, "theta"));
    }
    if (family == "amh") {
        check_no_extra(params, family, {"theta"});
        return amh(get_param(params, family, "theta"));
    }
    if (family == "frank") {
        check_no_extra(params, family, {"theta"});
        return frank(get_param(params, family, "theta"));
    }
    fail(Errc::ParamOutOfRange, "unknown generator family '" + family + "'");
}

std::string Generator::name() const {
    std::ostringstream os;
    os << family_name(family_);
    if (!params_.empty()) {
        os << "(";
        for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
        os << ")";
    }
    return os.str();
}

double Generator::log_value(double x) const {
    if (x < 0.0) fail(Errc::DomainError, "generator argument must be >= 0");
    switch (family_) {
        case GenFamily::Independence:
            return -x;
        case GenFamily::Clayton:
            return -params_[0] * std::log1p(x / params_[1]);
        case GenFamily::GumbelHougaard:
            return -std::pow(x, 1.0 / params_[0]);
        case GenFamily::GumbelBarnett:
            return -std::expm1(x) / params_[0];
        case GenFamily::Amh: {
            const double th = params_[0];
            return std::log(1.0 - th) - x - std::log1p(-th * std::exp(-x));
        }
        case GenFamily::Frank: {
            const double th = params_[0];
            const double m = std::expm1(-th) * std::exp(-x);  // = (e^{-th}-1) e^{-x} > 0
            return std::log(std::log1p(m)) - std::log(-th);
        }
    }
    return -kInf;
}

double Generator::value(double x) const { return std::exp(log_value(x)); }

double Generator::deriv(double x) const {
    if (x < 0.0) fail(Errc::DomainError, "generator argument must be >= 0");
    switch (family_) {
        case GenFamily::Independence:
            return -std::exp(-x);
        case GenFamily::Clayton: {
            const double a = params_[0], b = params_[1];
            return -(a / b) * std::exp(-(a + 1.0) * std::log1p(x / b));
        }
        case GenFamily::GumbelHougaard: {
            const double al = 1.0 / params_[0];
            if (x == 0.0) return al == 1.0 ? -1.0 : -kInf;
            return -al * std::pow(x, al - 1.0) * std::exp(-std::pow(x, al));
        }
        case GenFamily::GumbelBarnett: {
            const double th = params_[0];
            return -(std::exp(x) / th) * value(x);
        }
        case GenFamily::Amh: {
            const double th = params_[0];
            const double e = std::exp(-x);
            const double d = 1.0 - th * e;
            return -(1.0 - th) * e / (d * d);
        }
        case GenFamily::Frank: {
            const double th = params_[0];
            const double m = std::expm1(-th) * std::exp(-x);
            return -m / ((-th) * (1.0 + m));
        }
    }
    return 0.0;
}

double Generator::deriv2(double x) const {
    if (x < 0.0) fail(Errc::DomainError, "generator argument must be >= 0");
    switch (family_) {
        case GenFamily::Independence:
            return std::exp(-x);
        case GenFamily::Clayton: {
            const double a = params_[0], b = params_[1];
            return (a * (a + 1.0) / (b * b)) * std::exp(-(a + 2.0) * std::log1p(x / b));
        }
        case GenFamily::GumbelHougaard: {
            const double al = 1.0 / params_[0];
            if (x == 0.0) return al == 1.0 ? 1.0 : kInf;
            const double xa = std::pow(x, al);
            return al * std::pow(x, al - 2.0) * std::exp(-xa) * (al * xa + 1.0 - al);
        }
        case GenFamily::GumbelBarnett: {
            const double th = params_[0];
            const double r = std::exp(x) / th;
            return r * (r - 1.0) * value(x);
        }
        case GenFamily::Amh: {
            const double th = params_[0];
            const double e = std::exp(-x);
            const double d = 1.0 - th * e;
            return (1.0 - th) * e * (1.0 + th * e) / (d * d * d);
        }
        case GenFamily::Frank: {
            const double th = params_[0];
            const double m = std::expm1(-th) * std::exp(-x);
            const double d = 1.0 + m;
            return m / ((-th) * d * d);
        }
    }
    return 0.0;
}

double Generator::log_neg_deriv(double x) const {
    if (x < 0.0) fail(Errc::DomainError, "generator argument must be >= 0");
    switch (family_) {
        case GenFamily::Independence:
            return -x;
        case GenFamily::Clayton: {
            const double a = params_[0], b = params_[1];
            return std::log(a / b) - (a + 1.0) * std::log1p(x / b);
        }
        case GenFamily::GumbelHougaard: {
            const double al = 1.0 / params_[0];
            if (x == 0.0) return al == 1.0 ? 0.0 : kInf;
            return std::log(al) + (al - 1.0) * std::log(x) - std::pow(x, al);
        }
        case GenFamily::GumbelBarnett: {
            const double th = params_[0];
            return x - std::log(th) - std::expm1(x) / th;
        }
        case GenFamily::Amh: {
            const double th = params_[0];
            return std::log(1.0 - th) - x - 2.0 * std::log1p(-th * std::exp(-x));
        }
        case GenFamily::Frank: {
            const double th = params_[0];
            const double m = std::expm1(-th) * std::exp(-x);
            return std::log(std::expm1(-th)) - x - std::log(-th) - std::log1p(m);
        }
    }
    return -kInf;
}

double Generator::inverse(double u) const {
    if (!(u > 0.0 && u <= 1.0)) fail(Errc::DomainError, "inverse argument must be in (0,1]");
    switch (family_) {
        case GenFamily::Independence:
            return -std::log(u);
        case GenFamily::Clayton: {
            const double a = params_[0], b = params_[1];
            return b * std::expm1(-std::log(u) / a);
        }
        case GenFamily::GumbelHougaard:
            return std::pow(-std::log(u), params_[0]);
        case GenFamily::GumbelBarnett:
            return std::log1p(-params_[0] * std::log(u));
        case GenFamily::Amh: {
            const double th = params_[0];
            return std::log1p((1.0 - th) * (1.0 - u) / u);
        }
        case GenFamily::Frank: {
            const double th = params_[0];
            return -std::log(std::expm1(-th * u) / std::expm1(-th));
        }
    }
    return 0.0;
}

double Generator::hazard(double x) const { return std::exp(log_neg_deriv(x) - log_value(x)); }

FrailtyLaw Generator::frailty_law() const {
    switch (family_) {
        case GenFamily::Independence:
            return {FrailtyKind::Degenerate, 1.0, 0.0};
        case GenFamily::Clayton:
            return {FrailtyKind::Gamma, params_[0], params_[1]};
        case GenFamily::GumbelHougaard:
            if (params_[0] == 1.0) return {FrailtyKind::Degenerate, 1.0, 0.0};
            return {FrailtyKind::PositiveStable, 1.0 / params_[0], 0.0};
        default:
            return {FrailtyKind::Unsupported, 0.0, 0.0};
    }
}

double copula(const Generator& g, std::span<const double> u) {
    double sum = 0.0;
    for (double ui : u) {
        if (!(ui >= 0.0 && ui <= 1.0)) fail(Errc::DomainError, "copula arguments must be in [0,1]");
        if (ui == 0.0) return 0.0;
        sum += g.inverse(ui);
    }
    return g.value(sum);
}

Grid default_classification_grid(const Generator& g, std::size_t points) {
    return make_level_anchored_grid([&g](double u) { return g.inverse(u); }, points);
}

AgingClassReport classify(const Generator& g, const Grid& grid) {
    validate_grid(grid);
    // Ratio certificates stop where W drops below the domain floor.
    std::vector<double> pts;
    for (double x : grid.points)
        if (g.log_value(x) >= std::log(grid.domain_clip)) pts.push_back(x);
    if (pts.size() < kMinGridPoints)
        fail(Errc::DomainCollapsed, "fewer than 16 grid points above the survival floor");

    std::vector<double> hr(pts.size()), lr(pts.size()), rhr(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i];
        hr[i] = g.hazard(x);
        lr[i] = g.deriv2(x) / (-g.deriv(x));
        // -W'/(1-W) with 1-W evaluated via expm1 of the log for small x.
        rhr[i] = std::exp(g.log_neg_deriv(x)) / (-std::expm1(g.log_value(x)));
    }

    AgingClassReport rep;
    rep.probe_grid = pts;
    auto run = [&](const std::vector<double>& vals, Direction d) {
        MonotoneReport m = monotone_on_grid(pts, vals, d, grid.slack);
        return ClassFlag{m.holds, std::move(m.witnesses)};
    };
    rep.ifr = run(hr, Direction::Increasing);
    rep.dfr = run(hr, Direction::Decreasing);
    rep.ilr = run(lr, Direction::Increasing);
    rep.drfr = run(rhr, Direction::Decreasing);
    return rep;
}

}  // namespace tterel
