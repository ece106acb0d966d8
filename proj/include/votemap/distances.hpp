#pragma once

#include <optional>
#include <string>
#include <vector>

#include "votemap/types.hpp"

// Distances between ordinal elections.
//
// Isomorphic distances (swap, Spearman, discrete) minimize the summed vote
// distance over a candidate bijection sigma and a voter matching nu; they
// are zero exactly on isomorphic elections.  The aggregate distances
// (positionwise, pairwise, Bordawise) compare matrix/vector summaries and
// ignore which voter cast which vote.  Exact exponential searches guard
// their budgets and throw BudgetError rather than approximate.

namespace votemap {

enum class VoteMetric { Swap, Spearman, Discrete };

// Optional pinned parts of the (sigma, nu) search.  candidate_map[c] is the
// E2 candidate playing the role of E1's candidate c; voter_map[i] is the E2
// voter matched to E1's voter i.
struct MatchingConstraint {
    std::optional<std::vector<int>> candidate_map;
    std::optional<std::vector<int>> voter_map;
};

// swap: inversions between the two rankings; spearman: total displacement;
// discrete: 0/1 equality test.
long long vote_distance(VoteMetric metric, const PreferenceOrder& u,
                        const PreferenceOrder& v);

struct IsoDistanceResult {
    long long distance = 0;
    // Lexicographically smallest optimal candidate bijection, and one
    // optimal voter matching under it.
    std::vector<int> candidate_map;
    std::vector<int> voter_map;
};

// Minimum of sum_i d(sigma(v_i), u_{nu(i)}) over admissible sigma, nu.
// Free candidate search enumerates bijections (discrete instead derives the
// candidates for sigma from vote pairs, which is polynomial), so swap and
// Spearman with a free sigma are capped: m > brute_force_cap raises
// BudgetError.
IsoDistanceResult iso_distance_full(VoteMetric metric, const OrdinalElection& e1,
                                    const OrdinalElection& e2,
                                    const MatchingConstraint& constraint = {},
                                    int brute_force_cap = 8);

long long iso_distance(VoteMetric metric, const OrdinalElection& e1,
                       const OrdinalElection& e2,
                       const MatchingConstraint& constraint = {},
                       int brute_force_cap = 8);

// Exact isomorphic swap distance by branch and bound over candidate maps,
// usable well past the factorial cap (say m = 10 at a few dozen voters).
// Partial maps are priced by a pairwise-tally relaxation: matching c -> d
// costs at least |#votes with c over c' - #votes with d over d'| summed over
// mapped pairs, and unmapped candidates contribute an assignment over the
// same bound.  Nodes whose bound reaches the incumbent (seeded by a
// positionwise-matching heuristic) are cut.  Throws BudgetError when the
// node budget runs out; the result is otherwise exact.
long long iso_swap_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                            long long node_budget = 20'000'000);

enum class PositionwiseNorm { EMD, L1 };
enum class MatrixForm { Counts, Frequency };

// Minimum over column bijections of the summed column distance between the
// two position matrices.  Counts form requires equal n (distances between
// different-size electorates only make sense on frequencies).
double positionwise_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                             PositionwiseNorm norm = PositionwiseNorm::EMD,
                             MatrixForm form = MatrixForm::Counts);
double positionwise_distance(const PositionMatrix& p1, const PositionMatrix& p2,
                             PositionwiseNorm norm = PositionwiseNorm::EMD);
double positionwise_distance(const FrequencyMatrix& f1, const FrequencyMatrix& f2,
                             PositionwiseNorm norm = PositionwiseNorm::EMD);

// Minimum over candidate bijections of the entrywise l1 gap between the
// head-to-head matrices, by branch and bound (the exact problem is
// NP-complete; m > cap raises BudgetError).
double pairwise_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                         MatrixForm form = MatrixForm::Counts, int cap = 10);
double pairwise_distance(const PairwiseMatrix& m1, const PairwiseMatrix& m2,
                         MatrixForm form = MatrixForm::Counts, int cap = 10);

// EMD between the sorted (nonincreasing) Borda score vectors.
double bordawise_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                          MatrixForm form = MatrixForm::Counts);

enum class ElectionMetric {
    Swap,
    Spearman,
    Discrete,
    EmdPositionwise,
    L1Positionwise,
    Pairwise,
    Bordawise,
};

struct MetricOptions {
    MatrixForm form = MatrixForm::Counts;
    int brute_force_cap = 8;    // free-sigma swap/Spearman via enumeration
    int pairwise_cap = 10;
    long long swap_node_budget = 20'000'000;  // 0 = factorial enumeration
};

// All unordered pairs of the dataset under one metric.  Labels default to
// the dataset index.
DistanceMatrix distance_matrix(const std::vector<OrdinalElection>& dataset,
                               ElectionMetric metric,
                               const MetricOptions& options = {},
                               const std::vector<std::string>& labels = {});

// Divides a distance by the same metric's ID-UN value at this size, the
// diameter used for map normalization.  Counts form scales by n; Spearman
// has no closed-form diameter and is rejected.
double normalize_distance(double value, ElectionMetric metric, int m,
                          long long n = -1, MatrixForm form = MatrixForm::Counts);

enum class EquivalenceRelation { ANEC, Positionwise, Pairwise, Bordawise };

// Number of equivalence classes of m-candidate n-voter elections: ANEC is
// anonymity plus neutrality, the rest collapse elections at distance zero.
// Exhausts all vote multisets, so only tiny sizes are allowed (m <= 4,
// n <= 5).
long long count_equivalence_classes(int m, int n, EquivalenceRelation relation);

}  // namespace votemap
