#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spanner/spanner.hpp"

namespace spanner {

// Total order on the edges of a graph, as a permutation of edge ids.
using EdgeOrdering = std::vector<int>;

EdgeOrdering lex_ordering(const Graph& g);
EdgeOrdering random_ordering(const Graph& g, std::uint64_t seed);
// Validates that the pairs form a permutation of E_G.
EdgeOrdering ordering_from_pairs(const Graph& g, const std::vector<Edge>& pairs);

// Kruskal-style pass: edge (u,v) is kept iff its endpoints are at distance
// greater than k in the spanner built so far. Output girth is at least k+2.
SpannerInstance greedy_spanner(std::shared_ptr<const Graph> g, int k, const EdgeOrdering& order);

// Raised by ordering_for_spanner when the instance cannot be a greedy output.
struct NotReconstructible : InputError {
    explicit NotReconstructible(const std::string& property)
        : InputError("spanner not reconstructible by greedy: " + property + " requirement fails"),
          failing_property(property) {}
    std::string failing_property;
};

// Inverse direction: for a k-spanner with girth >= k+2, an ordering placing
// its edges first (canonically sorted) makes greedy reproduce it exactly.
EdgeOrdering ordering_for_spanner(const SpannerInstance& inst);

struct GreedyMinReport {
    int min_size = 0;
    EdgeOrdering witness;
    bool sampled = false;
    std::uint64_t orderings_tried = 0;
};

// Minimum greedy output size over edge orderings: full m! enumeration when
// m <= 9, otherwise seeded random sampling with an explicit budget.
GreedyMinReport exhaustive_greedy_min(const std::shared_ptr<const Graph>& g, int k,
                                      std::uint64_t sample_budget = 0, std::uint64_t seed = 0);

namespace detail {

// Deterministic bounded sampler (rejection), independent of stdlib
// distribution implementations.
template <typename Rng>
std::uint64_t rng_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw InternalError("rng_below(0)");
    if (n == 1) return 0;
    std::uint64_t mask = ~0ull;
    std::uint64_t limit = n - 1;
    while (mask >> 1 >= limit) mask >>= 1;
    std::uint64_t x;
    do {
        x = rng() & mask;
    } while (x >= n);
    return x;
}

template <typename Rng>
double rng_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Rng, typename T>
void rng_shuffle(Rng& rng, std::vector<T>& v) {
    for (std::uint64_t i = v.size(); i > 1; --i) {
        std::uint64_t j = rng_below(rng, i);
        std::swap(v[static_cast<size_t>(i - 1)], v[static_cast<size_t>(j)]);
    }
}

}  // namespace detail

}  // namespace spanner
