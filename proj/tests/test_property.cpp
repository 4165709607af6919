#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "tterel/model.hpp"
#include "tterel/structure.hpp"

using namespace tterel;

namespace {

// Random nonempty subsets of 1..n, patched with singletons until every
// component still appears after dropping dominated (superset) sets.
std::vector<IndexSet> random_path_sets(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> r_dist(1, 4);
    std::bernoulli_distribution member(0.5);
    std::vector<IndexSet> sets;
    const int r = r_dist(rng);
    for (int k = 0; k < r; ++k) {
        IndexSet p;
        for (int i = 1; i <= n; ++i)
            if (member(rng)) p.push_back(i);
        if (p.empty()) p.push_back(std::uniform_int_distribution<int>(1, n)(rng));
        sets.push_back(std::move(p));
    }
    while (true) {
        std::vector<char> covered(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& p : sets) {
            bool dominated = false;
            for (const auto& q : sets)
                if (q != p && std::includes(p.begin(), p.end(), q.begin(), q.end()))
                    dominated = true;
            if (dominated) continue;
            for (int i : p) covered[static_cast<std::size_t>(i)] = 1;
        }
        IndexSet leftovers;
        for (int i = 1; i <= n; ++i)
            if (!covered[static_cast<std::size_t>(i)]) leftovers.push_back(i);
        if (leftovers.empty()) break;
        for (int i : leftovers) sets.push_back({i});
    }
    return sets;
}

Generator random_generator(std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return Generator::independence();
        case 1: return Generator::clayton(0.3 + 2.0 * u01(rng), 0.3 + 2.0 * u01(rng));
        default: return Generator::gumbel_hougaard(1.0 + 2.0 * u01(rng));
    }
}

AgingFunction random_aging(std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return AgingFunction::linear(0.3 + 2.0 * u01(rng));
        case 1: return AgingFunction::exp_minus_one(0.5 + u01(rng), 1.0 + 4.0 * u01(rng));
        default: return AgingFunction::power(0.5 + u01(rng), 0.8 + 1.5 * u01(rng));
    }
}

}  // namespace

TEST_CASE("random structures: coherence, coefficient sums, lattice oracle") {
    std::mt19937 rng(7041u);
    for (int trial = 0; trial < 48; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 5)(rng);
        Structure s = Structure::from_path_sets(n, random_path_sets(n, rng));

        CHECK(testutil::structure_is_coherent(s));

        long long coef_sum = 0;
        for (const auto& [k, c] : cardinality_coefficients(s)) coef_sum += c;
        CHECK(coef_sum == 1);

        // completely monotone generators only: arbitrary structures need a
        // frailty representation for the signed expansion to be a survival
        std::vector<AgingFunction> aging;
        for (int i = 0; i < n; ++i) aging.push_back(random_aging(rng));
        TTEModel model(random_generator(rng), aging, s);
        LifetimeFunctions sys = system_lifetime(model);

        CHECK(sys.survival(0.0) == doctest::Approx(1.0).epsilon(1e-13));
        std::uniform_real_distribution<double> t_dist(0.05, 2.5);
        for (int k = 0; k < 3; ++k) {
            const double t = t_dist(rng);
            const double expected = testutil::naive_system_survival(model, t);
            CHECK(sys.survival(t) == doctest::Approx(expected).epsilon(1e-10));
            CHECK(sys.density(t) >= 0.0);
        }
    }
}
