#pragma once

#include <utility>
#include <vector>

#include "votemap/cultures.hpp"
#include "votemap/distances.hpp"
#include "votemap/types.hpp"

// Election isomorphism and subelection containment.  Whole-election
// isomorphism and the voter-subelection variants are polynomial (the
// candidate bijection can be derived from a single vote pair); the general
// and candidate variants are only available through a small brute-force
// oracle.

namespace votemap {

struct IsomorphismWitness {
    bool isomorphic = false;
    std::vector<int> candidate_map;  // empty unless isomorphic
    std::vector<int> voter_map;
};

IsomorphismWitness elections_isomorphic(const OrdinalElection& e1,
                                        const OrdinalElection& e2);

// Largest t such that some t voters of each election induce isomorphic
// subelections, with a certifying candidate bijection and voter pairing.
// Every vote pair seeds a candidate bijection; the best multiset overlap
// over all n*n seeds is the answer.
struct CommonVoterSubelection {
    int size = 0;
    std::vector<std::pair<int, int>> voter_pairs;  // (index in E, index in F)
    std::vector<int> candidate_map;
};

CommonVoterSubelection max_common_voter_subelection(const OrdinalElection& e,
                                                    const OrdinalElection& f);

// Does E_small appear in E_big after removing voters (same candidates)?
// Optional pinned candidate bijection or injective voter map.
bool voter_subelection_isomorphic(const OrdinalElection& e_small,
                                  const OrdinalElection& e_big,
                                  const MatchingConstraint& constraint = {});

// Does E_small appear in E_big after removing voters and candidates, when
// the candidate injection is already known?  candidate_map[c] names the big
// candidate playing small candidate c.
bool subelection_isomorphic_with_candidate_matching(
    const OrdinalElection& e_small, const OrdinalElection& e_big,
    const std::vector<int>& candidate_map);

enum class SubelectionVariant {
    General,    // drop voters and candidates
    Voter,      // drop voters only (equal m)
    Candidate,  // drop candidates only (equal n)
};

// Exhaustive oracle over candidate injections; big elections beyond m = 8
// are refused.
bool brute_force_subelection(const OrdinalElection& e_small,
                             const OrdinalElection& e_big,
                             SubelectionVariant variant);

// Mean and standard deviation of the matched-vote fraction
// max_common_voter_subelection(E, F) / n over `trials` fresh pairs of
// elections per culture pair.
struct SimilarityMatrix {
    std::vector<std::vector<double>> mean;
    std::vector<std::vector<double>> stddev;
};

SimilarityMatrix culture_similarity_matrix(const std::vector<CultureSpec>& specs,
                                           int m, int n, int trials, Rng& rng);

}  // namespace votemap
