#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spanner/enlarge.hpp"
#include "spanner/spanner.hpp"

namespace spanner {

inline constexpr int kOracleEdgeCap = 22;
inline constexpr int kGirthInfinite = std::numeric_limits<int>::max();

struct OptReport {
    int opt_size = 0;
    std::uint64_t witness_count = 0;
    bool witnesses_capped = false;
    std::vector<std::vector<int>> witnesses;     // edge-id lists (capped)
    std::map<int, std::uint64_t> girth_profile;  // girth -> #witnesses, kGirthInfinite = forest
    // One witness of girth >= k+2 when any exists, even past the cap.
    std::optional<std::vector<int>> high_girth_witness;

    bool any_witness_girth_at_least(int bound) const;
    bool all_witness_girth_at_least(int bound) const;
};

// Exact minimum k-spanner size by ascending-size subset search with forced
// edges and stretch pruning. With enumerate_all, every minimum witness is
// visited: the girth profile is exact and up to witness_cap witnesses are
// stored. Refuses graphs with more than kOracleEdgeCap edges.
OptReport min_spanner(const Graph& g, int k, bool enumerate_all,
                      std::size_t witness_cap = 10000);

struct OptProbe {
    int opt_size = 0;
    std::optional<std::vector<int>> high_girth_witness;
};

// Same exact OPT, but the witness scan stops at the first one whose girth
// reaches k+2. Cheaper when only that existence question matters.
OptProbe min_spanner_probe(const Graph& g, int k);

enum class PairClass { ExtremelyGood, Good, NotGood };

std::string pair_class_name(PairClass c);

struct ClassifyReport {
    PairClass verdict = PairClass::NotGood;
    int n = 0, k = 0;
    std::uint64_t graphs_checked = 0;
    bool sampled = false;
    // A graph all of whose minimum k-spanners have girth <= k+1.
    std::optional<std::vector<Edge>> not_good_witness;
    // A graph with at least one low-girth minimum k-spanner (refutes "extremely").
    std::optional<std::vector<Edge>> low_girth_witness;
};

// Sweeps connected graphs on n labeled vertices (n <= 7). When the universe
// exceeds a nonzero budget, a seeded uniform sample of that size is used and
// the report is flagged as sampled.
ClassifyReport classify_pair(int n, int k, std::uint64_t budget = 0, std::uint64_t seed = 0);

struct CrossCheckReport {
    bool enlarge_ok = false;
    int n = 0, k = 0;
    int in_edges = 0, out_edges = 0, opt = 0;
    std::string regime;
    long long regime_bound_rhs = 0;
    bool regime_bound_ok = false;
    long long approx_alpha = 1, approx_beta = 0;
    long long approx_lhs = 0, approx_rhs = 0;
    bool approx_ok = false;  // |E_R| - n <= alpha*(OPT - n) + beta
};

// Runs the girth enlarger and binds its size bound to the brute-force OPT.
CrossCheckReport cross_check_enlarger(const SpannerInstance& inst, RegimeChoice regime,
                                      int slack = 8);

}  // namespace spanner
