#pragma once

#include "votemap/types.hpp"

// Aggregate representations of an election (position/frequency/pairwise
// matrices, Borda vector) and the small numeric kernel used by the distance
// layer: earth mover's distance on equal-sum vectors, l1, and Pearson
// correlation.

namespace votemap {

PositionMatrix position_matrix(const OrdinalElection& e);
FrequencyMatrix frequency_matrix(const OrdinalElection& e);
PairwiseMatrix pairwise_matrix(const OrdinalElection& e);
BordaVector borda_vector(const OrdinalElection& e);

// Minimal cost of transporting mass x into mass y, where moving one unit
// between adjacent coordinates costs one.  Computed via the prefix-sum
// identity emd(x, y) = l1(prefix(x), prefix(y)).  Requires nonnegative
// entries and equal sums (tolerance 1e-9).
double emd(const std::vector<double>& x, const std::vector<double>& y);

double l1(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation coefficient; throws if either vector has zero
// variance (the correlation is undefined there).
double pcc(const std::vector<double>& x, const std::vector<double>& y);

// Builds an election whose position matrix equals P, by Birkhoff-style
// decomposition: repeatedly extract a permutation matrix supported on the
// positive entries and subtract its minimum weight.  The result contains at
// most m^2 - 2m + 2 distinct orders.
OrdinalElection realize_from_position_matrix(const PositionMatrix& p);

// Applies a candidate relabeling: candidate c becomes sigma[c].
PreferenceOrder relabel_vote(const PreferenceOrder& v, const std::vector<int>& sigma);

// The unique relabeling sigma with sigma(v) = u.
std::vector<int> matching_relabeling(const PreferenceOrder& v, const PreferenceOrder& u);

}  // namespace votemap
