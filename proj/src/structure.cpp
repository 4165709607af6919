#include "tterel/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tterel/error.hpp"

namespace tterel {

namespace {

IndexSet normalized(IndexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void merge_subsets(const std::vector<IndexSet>& sets, std::size_t i, const IndexSet& current,
                   int parity, std::map<IndexSet, long long>& acc) {
    if (i == sets.size()) {
        if (parity > 0) acc[current] += (parity % 2 == 1) ? 1 : -1;
        return;
    }
    merge_subsets(sets, i + 1, current, parity, acc);
    merge_subsets(sets, i + 1, set_union(current, sets[i]), parity + 1, acc);
}

}  // namespace

Structure Structure::from_path_sets(int n, std::vector<IndexSet> path_sets) {
    if (n < 1) fail(Errc::InvalidArgument, "component count must be >= 1");
    if (path_sets.empty()) fail(Errc::EmptyPathSets, "no path sets given");
    for (auto& p : path_sets) {
        if (p.empty()) fail(Errc::EmptyPathSets, "empty path set");
        for (int idx : p)
            if (idx < 1 || idx > n)
                fail(Errc::IndexOutOfRange,
                     "component " + std::to_string(idx) + " outside 1.." + std::to_string(n));
        p = normalized(std::move(p));
    }

    // Keep minimal sets only: drop any set that contains another given set.
    std::sort(path_sets.begin(), path_sets.end(),
              [](const IndexSet& a, const IndexSet& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    std::vector<IndexSet> minimal;
    for (const auto& p : path_sets) {
        bool dominated = false;
        for (const auto& kept : minimal)
            if (is_subset(kept, p)) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(p);
    }
    std::sort(minimal.begin(), minimal.end());
    minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());

    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : minimal)
        for (int idx : p) seen[static_cast<std::size_t>(idx)] = 1;
    for (int i = 1; i <= n; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            fail(Errc::IrrelevantComponent,
                 "component " + std::to_string(i) + " appears in no minimal path set");

    return Structure(n, std::move(minimal));
}

Structure Structure::series(int n) {
    IndexSet all(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) all[static_cast<std::size_t>(i - 1)] = i;
    return from_path_sets(n, {all});
}

Structure Structure::parallel(int n) {
    std::vector<IndexSet> sets;
    sets.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) sets.push_back({i});
    return from_path_sets(n, std::move(sets));
}

Structure Structure::k_of_n(int n, int k) {
    if (k < 1 || k > n) fail(Errc::InvalidK, "need 1 <= k <= n");
    // C(n,k) path sets; guard against absurd enumerations up front.
    double count = 1.0;
    for (int i = 0; i < k; ++i) count *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (count > 1e6) fail(Errc::TooManyPathSets, "k-of-n with C(n,k) > 1e6");

    std::vector<IndexSet> sets;
    IndexSet current;
    // All size-k subsets of 1..n in lexicographic order.
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        sets.emplace_back(idx.begin(), idx.end());
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return from_path_sets(n, std::move(sets));
}

Structure Structure::aircraft4() {
    // Two wings with two engines each; one working engine per wing keeps it flying:
    // T = min(max(X1,X2), max(X3,X4)).
    return from_path_sets(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
}

Structure Structure::builtin(const std::string& kind, int n, std::optional<int> k) {
    if (kind == "series") return series(n);
    if (kind == "parallel") return parallel(n);
    if (kind == "k_of_n") {
        if (!k) fail(Errc::InvalidK, "k_of_n requires k");
        return k_of_n(n, *k);
    }
    if (kind == "aircraft4") {
        if (n != 4) fail(Errc::InvalidArgument, "aircraft4 has exactly 4 components");
        return aircraft4();
    }
    fail(Errc::InvalidArgument, "unknown builtin structure '" + kind + "'");
}

bool Structure::evaluate(std::span<const char> states) const {
    if (states.size() != static_cast<std::size_t>(n_))
        fail(Errc::DimensionMismatch, "state vector length != n");
    for (const auto& p : path_sets_) {
        bool all = true;
        for (int idx : p)
            if (!states[static_cast<std::size_t>(idx - 1)]) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

double Structure::lifetime(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_))
        fail(Errc::DimensionMismatch, "lifetime vector length != n");
    return lifetime_over_path_sets(path_sets_, x);
}

double lifetime_over_path_sets(std::span<const IndexSet> path_sets, std::span<const double> x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : path_sets) {
        double worst = std::numeric_limits<double>::infinity();
        for (int idx : p) worst = std::min(worst, x[static_cast<std::size_t>(idx - 1)]);
        best = std::max(best, worst);
    }
    return best;
}

std::vector<SignedUnionTerm> signed_union_terms(const Structure& s) {
    const auto& sets = s.minimal_path_sets();
    if (sets.size() > static_cast<std::size_t>(kMaxPathSets))
        fail(Errc::TooManyPathSets,
             std::to_string(sets.size()) + " path sets exceed cap " + std::to_string(kMaxPathSets));
    std::map<IndexSet, long long> acc;
    merge_subsets(sets, 0, {}, 0, acc);
    std::vector<SignedUnionTerm> terms;
    terms.reserve(acc.size());
    for (const auto& [indices, coef] : acc)
        if (coef != 0) terms.push_back({indices, coef});
    return terms;
}

std::map<int, long long> cardinality_coefficients(const Structure& s) {
    std::map<int, long long> coeffs;
    for (const auto& term : signed_union_terms(s))
        coeffs[static_cast<int>(term.indices.size())] += term.coefficient;
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second == 0 ? coeffs.erase(it) : std::next(it);
    return coeffs;
}

}  // namespace tterel
