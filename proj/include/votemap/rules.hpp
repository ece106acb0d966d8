#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "votemap/types.hpp"

// Voting rules: single-winner scores, Condorcet analysis, the Dodgson
// swap-count score, and multiwinner committee optimization (exact at desk
// scale, plus the greedy/removal/Banzhaf/ranging approximations).
// Ties always break toward the lowest candidate index or lexicographically
// smallest committee.

namespace votemap {

struct Committee {
    std::vector<int> members;  // distinct, ascending

    int k() const { return static_cast<int>(members.size()); }
    bool contains(int c) const;
};

struct ScoreReport {
    std::string rule;
    std::vector<double> scores;  // indexed by candidate
    std::vector<int> winners;    // all argmax candidates, ascending
};

ScoreReport plurality_scores(const OrdinalElection& e);
ScoreReport borda_scores(const OrdinalElection& e);
// win = 1 point, pairwise draw = half a point for both
ScoreReport copeland_scores(const OrdinalElection& e);

// The candidate beating every other in a strict pairwise majority, if any.
std::optional<int> condorcet_winner(const OrdinalElection& e);

// Fewest adjacent swaps (across all votes) after which c wins every
// pairwise duel strictly.  Exact search over per-vote lift amounts with a
// remaining-deficit bound; m > cap raises BudgetError.
long long dodgson_score(const OrdinalElection& e, int candidate, int cap = 8);
ScoreReport dodgson_winner(const OrdinalElection& e, int cap = 8);

// Chamberlin-Courant: each voter scores the Borda value of its favorite
// committee member.  Harmonic Borda: Borda values of all members, the i-th
// best weighted by 1/i.
double cc_score(const OrdinalElection& e, const Committee& w);
double hb_score(const OrdinalElection& e, const Committee& w);

enum class CommitteeRule { CC, HB };

// Global optimum by enumerating all k-subsets (throws BudgetError when
// there are too many); ties resolved to the lexicographically smallest
// committee.
std::pair<Committee, double> exact_committee(const OrdinalElection& e, int k,
                                             CommitteeRule rule);

// Greedy insertion (carries the classic 1-1/e guarantee for these
// submodular scores).
Committee seq_cc(const OrdinalElection& e, int k);
Committee seq_hb(const OrdinalElection& e, int k);

// Greedy deletion from the full candidate set.
Committee removal_cc(const OrdinalElection& e, int k);
Committee removal_hb(const OrdinalElection& e, int k);

// Marginal-contribution heuristic: each step adds the candidate with the
// highest average CC gain over all completions of the committee (exact
// expectation by enumerating complements).
Committee banzhaf_cc(const OrdinalElection& e, int k);

// Threshold sweep: for each position threshold t (descending), greedily
// cover voters that rank a committee member within their top t; the
// best-scoring of the m committees wins.
Committee ranging_cc(const OrdinalElection& e, int k);

// Highest minus lowest Borda score.
long long borda_spread(const OrdinalElection& e);

}  // namespace votemap
