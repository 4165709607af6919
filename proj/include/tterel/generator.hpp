#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tterel/grid.hpp"

namespace tterel {

enum class GenFamily { Independence, Clayton, GumbelHougaard, GumbelBarnett, Amh, Frank };

const char* family_name(GenFamily f);

// Frailty law whose Laplace transform equals W, when known in closed form.
enum class FrailtyKind {
    Degenerate,     // Theta == 1 (independence)
    Gamma,          // shape p1, rate p2 (Clayton)
    PositiveStable, // index p1 in (0,1) (Gumbel-Hougaard, theta > 1)
    Unsupported,
};

struct FrailtyLaw {
    FrailtyKind kind = FrailtyKind::Unsupported;
    double p1 = 0.0;
    double p2 = 0.0;
};

// An Archimedean generator: W : [0,inf) -> (0,1], continuous, strictly
// decreasing and convex, W(0) = 1, W(inf) = 0. All evaluators are closed
// form per family; log_value and log_neg_deriv keep tail ratios usable far
// past the underflow point of W itself.
class Generator {
  public:
    static Generator independence();
    static Generator clayton(double a, double b);       // W(x) = b^a (b+x)^-a, a,b > 0
    static Generator gumbel_hougaard(double theta);     // W(x) = exp(-x^(1/theta)), theta >= 1
    static Generator gumbel_barnett(double theta);      // W(x) = exp((1-e^x)/theta), theta in (0,1]
    static Generator amh(double theta);                 // W(x) = (1-theta)/(e^x-theta), theta in [-1,0)
    static Generator frank(double theta);               // theta <= 0; theta == 0 maps to independence
    static Generator make(const std::string& family, const std::map<std::string, double>& params);

    GenFamily family() const { return family_; }
    const std::vector<double>& params() const { return params_; }
    std::string name() const;

    double value(double x) const;          // W(x)
    double log_value(double x) const;      // ln W(x)
    double deriv(double x) const;          // W'(x)
    double deriv2(double x) const;         // W''(x)
    double log_neg_deriv(double x) const;  // ln(-W'(x))
    double inverse(double u) const;        // W^-1(u), u in (0,1]
    double hazard(double x) const;         // -W'(x)/W(x)

    bool same_law(const Generator& other) const {
        return family_ == other.family_ && params_ == other.params_;
    }

    FrailtyLaw frailty_law() const;

  private:
    Generator(GenFamily f, std::vector<double> p) : family_(f), params_(std::move(p)) {}

    GenFamily family_;
    std::vector<double> params_;
};

// n-dimensional Archimedean copula value W(sum_i W^-1(u_i)).
// Arguments must lie in [0,1]; a zero argument yields 0 (limit).
double copula(const Generator& g, std::span<const double> u);

struct ClassFlag {
    bool holds = false;
    std::vector<Witness> witnesses;
};

// Aging classes of W viewed as a reliability function, certified on a grid.
struct AgingClassReport {
    ClassFlag ifr;   // -W'/W increasing        (W log-concave)
    ClassFlag dfr;   // -W'/W decreasing        (W log-convex)
    ClassFlag ilr;   // -W''/W' increasing      (-W' log-concave)
    ClassFlag drfr;  // -W'/(1-W) decreasing    (1-W log-concave)
    std::vector<double> probe_grid;
};

// Grid on (0, x_max] with x_max at the W = 1e-9 level, clipped to the
// domain floor; suitable for classify().
Grid default_classification_grid(const Generator& g, std::size_t points = 257);

AgingClassReport classify(const Generator& g, const Grid& grid);

}  // namespace tterel
