#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "tterel/model.hpp"
#include "tterel/residual.hpp"
#include "tterel/structure.hpp"

namespace tterel::mc {

// Deterministic distribution transforms over a std::mt19937_64 engine.
// The engine's output sequence is fixed by the standard, and these
// transforms avoid the implementation-defined std::*_distribution adaptors,
// so batches are reproducible across standard libraries.
namespace rng {

std::uint64_t splitmix64(std::uint64_t& state);

double uniform01(std::mt19937_64& eng);     // [0, 1)
double exponential(std::mt19937_64& eng);   // rate 1
double normal(std::mt19937_64& eng);        // standard, Marsaglia polar
double gamma(double shape, std::mt19937_64& eng);  // unit rate, Marsaglia-Tsang

// Totally positively skewed stable variate with Laplace transform
// exp(-s^alpha), alpha in (0,1); Kanter's representation.
double positive_stable(double alpha, std::mt19937_64& eng);

}  // namespace rng

// Draws of the common environment factor Theta for a generator whose
// frailty law is known in closed form. One instance per thread.
class FrailtySampler {
  public:
    FrailtySampler(FrailtyLaw law, std::uint64_t seed);
    double next();
    const FrailtyLaw& law() const { return law_; }

  private:
    FrailtyLaw law_;
    std::mt19937_64 engine_;
};

// nullopt when the generator has no supported frailty law.
std::optional<FrailtySampler> make_frailty_sampler(const Generator& g, std::uint64_t seed);

// Component lifetimes drawn through the frailty construction:
// X_i = R_i^-1(E_i / Theta) with E_i standard exponential.
struct SampleBatch {
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    int n_components = 0;
    std::vector<double> lifetimes;  // row-major, n_samples x n_components
    std::vector<double> theta;

    double lifetime(std::size_t sample, int component) const {
        return lifetimes[sample * static_cast<std::size_t>(n_components) +
                         static_cast<std::size_t>(component - 1)];
    }
};

// Deterministic function of (model, n_samples, seed); sampling is laid out
// in fixed-size shards with seeds derived from the master seed, so the
// result does not depend on how work would be distributed.
// Throws Error(UnsupportedFrailty) when the generator has no sampler.
SampleBatch sample(const TTEModel& model, std::size_t n_samples, std::uint64_t seed);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_conditioning = 0;
};

Estimate empirical_survival(const SampleBatch& batch, const Structure& structure, double t);
Estimate empirical_survival(const SampleBatch& batch, std::span<const IndexSet> path_sets,
                            double t);

// Conditional survival estimate of the residual lifetime at t, evaluated at
// remaining life x. Requires at least 1000 conditioning survivors.
Estimate empirical_residual(const SampleBatch& batch, const Structure& structure, double t,
                            double x, ResidualKind kind);
Estimate empirical_residual(const SampleBatch& batch, std::span<const IndexSet> path_sets,
                            double t, double x, ResidualKind kind);

}  // namespace tterel::mc
