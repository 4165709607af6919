#include "tterel/mc.hpp"

#include <cmath>

#include "tterel/error.hpp"

namespace tterel::mc {

namespace rng {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& eng) { return -std::log1p(-uniform01(eng)); }

double normal(std::mt19937_64& eng) {
    // Marsaglia polar; the spare deviate is discarded to keep draw counts
    // a deterministic function of the accept/reject path only.
    while (true) {
        const double u = 2.0 * uniform01(eng) - 1.0;
        const double v = 2.0 * uniform01(eng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double gamma(double shape, std::mt19937_64& eng) {
    if (!(shape > 0.0)) fail(Errc::InvalidArgument, "gamma shape must be > 0");
    if (shape < 1.0) {
        // Boost to shape+1 and scale back by U^(1/shape).
        const double g = gamma(shape + 1.0, eng);
        double u = uniform01(eng);
        while (u == 0.0) u = uniform01(eng);
        return g * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = normal(eng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = uniform01(eng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double positive_stable(double alpha, std::mt19937_64& eng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(Errc::InvalidArgument, "stable index must be in (0,1)");
    // Kanter: S = (A(U)/E)^((1-alpha)/alpha) with
    // A(u) = sin(a pi u)^(a/(1-a)) sin((1-a) pi u) / sin(pi u)^(1/(1-a)).
    double u = uniform01(eng);
    while (u == 0.0) u = uniform01(eng);
    const double e = exponential(eng);
    const double pi_u = M_PI * u;
    const double log_a = (alpha / (1.0 - alpha)) * std::log(std::sin(alpha * pi_u)) +
                         std::log(std::sin((1.0 - alpha) * pi_u)) -
                         (1.0 / (1.0 - alpha)) * std::log(std::sin(pi_u));
    return std::exp(((1.0 - alpha) / alpha) * (log_a - std::log(e)));
}

}  // namespace rng

FrailtySampler::FrailtySampler(FrailtyLaw law, std::uint64_t seed) : law_(law), engine_(seed) {}

double FrailtySampler::next() {
    switch (law_.kind) {
        case FrailtyKind::Degenerate:
            return 1.0;
        case FrailtyKind::Gamma:
            return rng::gamma(law_.p1, engine_) / law_.p2;
        case FrailtyKind::PositiveStable:
            return rng::positive_stable(law_.p1, engine_);
        case FrailtyKind::Unsupported:
            break;
    }
    fail(Errc::UnsupportedFrailty, "no sampler for this frailty law");
}

std::optional<FrailtySampler> make_frailty_sampler(const Generator& g, std::uint64_t seed) {
    const FrailtyLaw law = g.frailty_law();
    if (law.kind == FrailtyKind::Unsupported) return std::nullopt;
    return FrailtySampler(law, seed);
}

namespace {

constexpr std::size_t kShardSize = 1 << 14;

}  // namespace

SampleBatch sample(const TTEModel& model, std::size_t n_samples, std::uint64_t seed) {
    const FrailtyLaw law = model.generator().frailty_law();
    if (law.kind == FrailtyKind::Unsupported)
        fail(Errc::UnsupportedFrailty,
             "generator " + model.generator().name() + " has no frailty sampler");

    const int n = model.n();
    SampleBatch batch;
    batch.n_samples = n_samples;
    batch.seed = seed;
    batch.n_components = n;
    batch.lifetimes.resize(n_samples * static_cast<std::size_t>(n));
    batch.theta.resize(n_samples);

    // Fixed-size shards with derived seeds; the layout is independent of any
    // execution strategy, so estimates cannot depend on worker count.
    std::uint64_t seed_state = seed;
    for (std::size_t shard_start = 0; shard_start < n_samples; shard_start += kShardSize) {
        const std::size_t shard_end = std::min(n_samples, shard_start + kShardSize);
        std::mt19937_64 engine(rng::splitmix64(seed_state));
        FrailtySampler frailty(law, rng::splitmix64(seed_state));
        for (std::size_t s = shard_start; s < shard_end; ++s) {
            const double theta = frailty.next();
            batch.theta[s] = theta;
            for (int i = 1; i <= n; ++i) {
                const double e = rng::exponential(engine);
                batch.lifetimes[s * static_cast<std::size_t>(n) + static_cast<std::size_t>(i - 1)] =
                    model.aging()[static_cast<std::size_t>(i - 1)].inverse(e / theta);
            }
        }
    }
    return batch;
}

namespace {

void check_dims(const SampleBatch& batch, std::span<const IndexSet> path_sets) {
    for (const auto& p : path_sets)
        for (int idx : p)
            if (idx < 1 || idx > batch.n_components)
                fail(Errc::DimensionMismatch, "path set index " + std::to_string(idx) +
                                                  " outside batch with n=" +
                                                  std::to_string(batch.n_components));
}

Estimate binomial_estimate(std::size_t hits, std::size_t trials) {
    if (trials == 0) fail(Errc::InvalidArgument, "estimate over an empty sample");
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

}  // namespace

Estimate empirical_survival(const SampleBatch& batch, std::span<const IndexSet> path_sets,
                            double t) {
    check_dims(batch, path_sets);
    const std::size_t n = static_cast<std::size_t>(batch.n_components);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < batch.n_samples; ++s) {
        std::span<const double> row(batch.lifetimes.data() + s * n, n);
        if (lifetime_over_path_sets(path_sets, row) > t) ++hits;
    }
    return binomial_estimate(hits, batch.n_samples);
}

Estimate empirical_survival(const SampleBatch& batch, const Structure& structure, double t) {
    if (structure.n() != batch.n_components)
        fail(Errc::DimensionMismatch, "structure n != batch n");
    return empirical_survival(batch, structure.minimal_path_sets(), t);
}

Estimate empirical_residual(const SampleBatch& batch, std::span<const IndexSet> path_sets,
                            double t, double x, ResidualKind kind) {
    check_dims(batch, path_sets);
    const std::size_t n = static_cast<std::size_t>(batch.n_components);
    std::size_t conditioning = 0, hits = 0;
    for (std::size_t s = 0; s < batch.n_samples; ++s) {
        std::span<const double> row(batch.lifetimes.data() + s * n, n);
        const double life = lifetime_over_path_sets(path_sets, row);
        bool in_condition;
        if (kind == ResidualKind::Usual) {
            in_condition = life > t;
        } else {
            in_condition = true;
            for (double xi : row)
                if (!(xi > t)) {
                    in_condition = false;
                    break;
                }
        }
        if (!in_condition) continue;
        ++conditioning;
        if (life > t + x) ++hits;
    }
    if (conditioning < 1000)
        fail(Errc::InsufficientConditioning,
             "only " + std::to_string(conditioning) + " conditioning survivors (need >= 1000)");
    return binomial_estimate(hits, conditioning);
}

Estimate empirical_residual(const SampleBatch& batch, const Structure& structure, double t,
                            double x, ResidualKind kind) {
    if (structure.n() != batch.n_components)
        fail(Errc::DimensionMismatch, "structure n != batch n");
    return empirical_residual(batch, structure.minimal_path_sets(), t, x, kind);
}

}  // namespace tterel::mc
