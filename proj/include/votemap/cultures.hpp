#pragma once

#include <optional>

#include "votemap/types.hpp"

// Samplers for the ordinal statistical cultures: impartial culture, urn,
// Mallows (plain and normalized), the structured domains (single-peaked,
// single-peaked on a circle, single-crossing, group-separable), Euclidean
// models, and the four compass elections.

namespace votemap {

enum class CultureKind {
    IC,
    Urn,
    Mallows,
    NormMallows,
    Walsh,
    Conitzer,
    SPOC,
    SingleCrossing,
    GroupSeparable,
    Euclidean,
    Compass,
};

enum class GSTree { Balanced, Caterpillar, Custom };

enum class EuclideanSpace { Interval, Disc, Square, Cube, NCube, Circle, Sphere, NSphere };

enum class CompassKind { ID, UN, AN, ST };

struct CultureSpec {
    CultureKind kind = CultureKind::IC;
    double alpha = 0.0;              // urn contagion
    double phi = 0.5;                // Mallows dispersion
    double norm_phi = 0.5;           // normalized dispersion
    double weight = 0.0;             // fraction of reversed votes (norm-Mallows)
    std::optional<PreferenceOrder> central;
    GSTree tree = GSTree::Balanced;
    EuclideanSpace space = EuclideanSpace::Interval;
    int dimension = 1;               // for NCube / NSphere
    double radius = 0.5;             // disc / circle radius
    double center_x = 0.0, center_y = 0.0;
    CompassKind compass = CompassKind::ID;

    static CultureSpec ic() { return {}; }
    static CultureSpec urn(double alpha);
    static CultureSpec mallows(double phi, std::optional<PreferenceOrder> central = {});
    static CultureSpec norm_mallows(double norm_phi, double weight = 0.0);
    static CultureSpec simple(CultureKind kind);
    static CultureSpec group_separable(GSTree tree);
    static CultureSpec euclidean(EuclideanSpace space, int dimension = 1);
    static CultureSpec compass_culture(CompassKind kind);
};

OrdinalElection sample_election(const CultureSpec& spec, int m, int n, Rng& rng);

// Finds phi such that the expected swap distance between a Mallows sample
// and its central vote equals (norm_phi / 2) * C(m, 2).  Bisection on the
// closed-form expectation, tolerance 1e-10.
double normalize_phi(double norm_phi, int m);

// Analytic expected swap distance of a Mallows(phi) sample from its
// central vote (sum of per-insertion expectations).
double mallows_expected_swaps(double phi, int m);

// Upper bound sum_{i=1..n} 1/(1 + (i-1) alpha) on the expected number of
// distinct votes in an urn sample.
double urn_expected_distinct_bound(double alpha, int n);

// One Mallows sample via repeated insertion: the i-th candidate of the
// central vote lands at position j in {0..i-1} of the partial ranking with
// probability phi^(i-1-j) / (1 + phi + ... + phi^(i-1)).
PreferenceOrder mallows_insertion_sample(double phi, const PreferenceOrder& central, Rng& rng);

// The four reference elections.  ID is n copies of the identity order; AN
// is half identity, half reversed (n must be even); UN is sampled IC; ST
// ranks a uniformly shuffled first half of the candidates above a
// uniformly shuffled second half (m must be even).
OrdinalElection compass_election(CompassKind kind, int m, int n, Rng& rng);

}  // namespace votemap
