#pragma once

#include <utility>

#include "votemap/types.hpp"

// The four reference points of the map (plus reversed identity): analytic
// frequency matrices, straight-line paths between them, and closed-form
// distances.  These are exact values, so the rest of the code base uses them
// as oracles: a distance computed on a realized compass election must land
// on the formula.

namespace votemap {

enum class CompassPoint { ID, UN, AN, ST, RID };

enum class CompassMetric { EmdPos, L1Pos, Pair, Borda, Swap, Disc };

// Frequency matrix of a compass point: ID is the identity, UN is all 1/m,
// AN averages ID with its reverse, ST is block-diagonal with two UN_{m/2}
// blocks.  ST needs even m.
FrequencyMatrix compass_matrix(CompassPoint kind, int m);

struct CompassMatrix {
    CompassPoint kind;
    int num_candidates;
    FrequencyMatrix matrix;

    CompassMatrix(CompassPoint k, int m)
        : kind(k), num_candidates(m), matrix(compass_matrix(k, m)) {}
};

// Exact pairwise (head-to-head) matrix of a compass point.  All four points
// have win fractions in {0, 1/2, 1}, so two phantom voters represent them
// exactly in count form.
PairwiseMatrix compass_pairwise_matrix(CompassPoint kind, int m);

// Per-voter Borda scores induced by a frequency matrix: candidate c earns
// m-1-i weighted by the fraction of voters placing it at position i.
std::vector<double> frequency_borda_scores(const FrequencyMatrix& f);

// Pointwise mix alpha*X + (1-alpha)*Y.  When the columns of X and Y are
// aligned (identity matching is optimal), the mix sits on the positionwise
// segment between them: d(X,Z) + d(Z,Y) = d(X,Y).
FrequencyMatrix convex_path(const FrequencyMatrix& x, const FrequencyMatrix& y,
                            double alpha);

// Closed-form distance between two compass points.  n is required for the
// per-vote metrics (swap, disc) and for count_form Borda/pairwise values;
// those also require m! to divide n, matching the propositions' exact-
// election setting.  Borda and pairwise default to the per-voter normalized
// value; count_form restores the raw sum.
//
// No closed form exists for swap(UN,AN) and swap(AN,ST); those throw, and
// compass_swap_bounds gives the proven bracket instead.
double compass_distance(CompassMetric metric, CompassPoint a, CompassPoint b,
                        int m, long long n = -1, bool count_form = false);

// Lower and upper bounds n(m^2-3m+2)/8 .. n(m^2-m)/4 covering the two swap
// pairs without a closed form.
std::pair<double, double> compass_swap_bounds(int m, long long n);

}  // namespace votemap
