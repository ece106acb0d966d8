#pragma once

#include <string>
#include <vector>

#include "votemap/types.hpp"

// Planar embeddings of a distance matrix (the map itself) and the two
// quality scores used to compare embedding algorithms: monotonicity (are
// relative orderings of distances preserved?) and distortion (are
// normalized distances preserved?).

namespace votemap {

struct MapPoint {
    double x = 0.0;
    double y = 0.0;
};

// An embedded dataset together with the distances it came from, so quality
// scores can compare both sides.  algorithm records how it was produced.
struct Embedding {
    std::vector<std::string> labels;
    std::vector<MapPoint> points;
    DistanceMatrix source;
    std::string algorithm;
    double stress = 0.0;

    double embedded_distance(int i, int j) const;
};

// Stress majorization with w_ij = d_ij^-2 and multi-start: the classic
// length-proportional objective of Kamada-Kawai, restarted `restarts` times
// from random layouts, returning the lowest-stress result.
Embedding embed_kamada_kawai(const DistanceMatrix& d, int restarts, Rng& rng);

// Force-directed layout with per-pair ideal lengths proportional to the
// distances, displacement capped by a linearly cooling temperature.
Embedding embed_fruchterman_reingold(const DistanceMatrix& d, int iterations,
                                     Rng& rng);

// Unweighted SMACOF started from classical (Torgerson) scaling; fully
// deterministic, no randomness involved.
Embedding embed_mds_smacof(const DistanceMatrix& d, int iterations);

// Per-item fraction of ordered pairs (Y, Z) whose distance comparison with
// X keeps its sign after embedding; eps forgives sign flips whose embedded
// difference is at most eps * min(embedded distances).
struct MonotonicityReport {
    std::vector<double> per_item;
    double mean = 1.0;
};

MonotonicityReport monotonicity(const Embedding& q, double eps);

// Per-item mean over Y of max/min ratio of the normalized embedded and
// source distances (>= 1; infinite when exactly one of them is zero).
// Distances normalize by the ID-UN entry when both labels are present,
// otherwise by the dataset maximum; `normalization` records which.
struct DistortionReport {
    std::vector<double> per_item;
    double mean = 1.0;
    std::string normalization;
};

DistortionReport distortion(const Embedding& q);

}  // namespace votemap
