#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "votemap/rules.hpp"
#include "votemap/types.hpp"

// Approval elections: statistical cultures, the (p, phi) resampling grid,
// vote- and election-level distances, and committee rules.

namespace votemap {

enum class ApprovalCultureKind {
    PIC,           // approve each candidate independently with probability p
    PID,           // every ballot equals the central ballot
    Resampling,    // keep central verdicts w.p. 1-phi, else redraw w.p. p
    Disjoint,      // resampling around one of g disjoint central ballots
    Moving,        // resampling where each sampled vote becomes the center
    Noise,         // ballot v drawn with probability ~ phi^dist(center, v)
    Euclidean1D,   // approve candidates within `radius` on a segment
    Euclidean2D,   // same on the unit square
    TruncatedUrn,  // top ceil(p*m) candidates of an urn ranking
};

enum class ApprovalMetric { Hamming, Jaccard };

struct ApprovalCultureSpec {
    ApprovalCultureKind kind = ApprovalCultureKind::PIC;
    double p = 0.5;
    double phi = 0.5;
    int groups = 1;
    double radius = 0.2;
    double alpha = 0.1;
    ApprovalMetric noise_metric = ApprovalMetric::Hamming;
    // Defaults to the first floor(p*m) candidates when unset.
    std::optional<ApprovalBallot> central;

    static ApprovalCultureSpec pic(double p);
    static ApprovalCultureSpec pid(double p);
    static ApprovalCultureSpec resampling(double p, double phi);
    static ApprovalCultureSpec disjoint(double p, double phi, int groups);
    static ApprovalCultureSpec moving(double p, double phi, int groups = 1);
    static ApprovalCultureSpec noise(double p, double phi,
                                     ApprovalMetric metric = ApprovalMetric::Hamming);
    static ApprovalCultureSpec euclidean_1d(double radius);
    static ApprovalCultureSpec euclidean_2d(double radius);
    static ApprovalCultureSpec truncated_urn(double p, double alpha);
};

ApprovalElection sample_approval(const ApprovalCultureSpec& spec, int m, int n,
                                 Rng& rng);

// Hamming counts the candidates approved by exactly one of the two ballots;
// Jaccard divides that by the size of the union (two empty ballots are at
// distance 0).
double approval_vote_distance(ApprovalMetric metric, const ApprovalBallot& u,
                              const ApprovalBallot& v);

ApprovalwiseVector approvalwise_vector(const ApprovalElection& e);
double approvalwise_distance(const ApprovalwiseVector& x, const ApprovalwiseVector& y);
double approvalwise_distance(const ApprovalElection& e, const ApprovalElection& f);

// Expected approvalwise vector of the (p, phi) resampling culture: central
// candidates keep probability (1-phi) + phi*p, the rest phi*p.
struct GridPoint {
    double p = 0.5;
    double phi = 0.5;

    ApprovalwiseVector analytic_vector(int m) const;
};

double grid_distance(double p1, double phi1, double p2, double phi2, int m);

// Exact minimum over candidate bijections and voter matchings of the summed
// Hamming distance.  Branch and bound over the candidate bijection; ballots
// beyond `candidate_cap` candidates are refused.
long long isomorphic_hamming_distance(const ApprovalElection& e,
                                      const ApprovalElection& f,
                                      int candidate_cap = 8);

// Largest candidate approval score divided by n.
double max_approval_score(const ApprovalElection& e);

// Largest ell such that some group of at least ell*n/k voters jointly
// approves ell common candidates.  Exhaustive over candidate subsets,
// so m <= 20 and k <= 10.
int cohesiveness_level(const ApprovalElection& e, int k);

// Fraction of voters belonging to at least one 1-cohesive group, i.e.
// approving some candidate that n/k or more voters approve.
double voters_in_1cohesive(const ApprovalElection& e, int k);

std::pair<Committee, double> av_committee(const ApprovalElection& e, int k);

// Exact mode enumerates all committees (within the subset budget); budget
// mode falls back to greedy sequential optimization of the same score.
enum class PavMode { Exact, Budget };

std::pair<Committee, double> pav_committee(const ApprovalElection& e, int k,
                                           PavMode mode = PavMode::Exact);

}  // namespace votemap
