#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tterel {

// Component index set, 1-based, sorted ascending, no duplicates.
using IndexSet = std::vector<int>;

// One inclusion-exclusion term: the union of some nonempty family of
// minimal path sets, with the net signed multiplicity after merging all
// subset families yielding the same union.
struct SignedUnionTerm {
    IndexSet indices;
    long long coefficient = 0;
};

// Hard cap on the number of minimal path sets; the subset enumeration
// behind the inclusion-exclusion expansion is 2^r.
inline constexpr int kMaxPathSets = 25;

// A coherent structure given by its minimal path sets over components
// 1..n. Construction normalizes the input (sorts, deduplicates, drops
// non-minimal sets) and rejects structures with irrelevant components.
class Structure {
  public:
    static Structure from_path_sets(int n, std::vector<IndexSet> path_sets);
    static Structure series(int n);
    static Structure parallel(int n);
    static Structure k_of_n(int n, int k);
    static Structure aircraft4();
    // kind in {"series","parallel","k_of_n","aircraft4"}; k used by k_of_n only.
    static Structure builtin(const std::string& kind, int n, std::optional<int> k = std::nullopt);

    int n() const { return n_; }
    int path_set_count() const { return static_cast<int>(path_sets_.size()); }
    const std::vector<IndexSet>& minimal_path_sets() const { return path_sets_; }

    // Boolean structure function over component states (index 0 = component 1).
    bool evaluate(std::span<const char> states) const;

    // System lifetime max_i min_{j in P_i} x_j for component lifetimes x.
    double lifetime(std::span<const double> x) const;

    bool operator==(const Structure& other) const {
        return n_ == other.n_ && path_sets_ == other.path_sets_;
    }

  private:
    Structure(int n, std::vector<IndexSet> sets) : n_(n), path_sets_(std::move(sets)) {}

    int n_ = 0;
    std::vector<IndexSet> path_sets_;
};

// All inclusion-exclusion terms of the structure, merged by index set
// (deterministic lexicographic order), zero-coefficient terms dropped.
// Throws Error(TooManyPathSets) when r > kMaxPathSets.
std::vector<SignedUnionTerm> signed_union_terms(const Structure& s);

// Collapse of the signed union terms by cardinality: k -> c_k.
// The coefficients always satisfy sum_k c_k = 1.
std::map<int, long long> cardinality_coefficients(const Structure& s);

// System lifetime for explicit path sets (no coherence requirement);
// used by estimators that evaluate sub-systems of a larger component set.
double lifetime_over_path_sets(std::span<const IndexSet> path_sets, std::span<const double> x);

}  // namespace tterel
