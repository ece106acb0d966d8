#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "votemap/cultures.hpp"
#include "votemap/distances.hpp"

using namespace votemap;

namespace {

// Peels the vote from the bottom: each least-preferred candidate must sit at
// an end of the remaining axis interval.
bool single_peaked_on(const PreferenceOrder& v, const std::vector<int>& axis) {
    const int m = v.size();
    std::vector<int> ax_pos(m);
    for (int i = 0; i < m; ++i) ax_pos[axis[i]] = i;
    int lo = 0, hi = m - 1;
    for (int slot = m - 1; slot > 0; --slot) {
        const int p = ax_pos[v.ranking[slot]];
        if (p == lo) {
            ++lo;
        } else if (p == hi) {
            --hi;
        } else {
            return false;
        }
    }
    return true;
}

// Circular variant: every top prefix must occupy one contiguous arc.
bool circularly_peaked_on(const PreferenceOrder& v, const std::vector<int>& axis) {
    const int m = v.size();
    std::vector<int> ax_pos(m);
    for (int i = 0; i < m; ++i) ax_pos[axis[i]] = i;
    std::vector<char> taken(m, 0);
    for (int k = 0; k < m; ++k) {
        taken[ax_pos[v.ranking[k]]] = 1;
        int rises = 0;
        for (int i = 0; i < m; ++i)
            if (!taken[i] && taken[(i + 1) % m]) ++rises;
        if (k + 1 < m && rises != 1) return false;
    }
    return true;
}

template <class Check>
bool exists_axis(const OrdinalElection& e, Check check) {
    std::vector<int> axis(e.m());
    for (int i = 0; i < e.m(); ++i) axis[i] = i;
    do {
        bool all = true;
        for (const auto& v : e.votes)
            if (!check(v, axis)) {
                all = false;
                break;
            }
        if (all) return true;
    } while (std::next_permutation(axis.begin(), axis.end()));
    return false;
}

long long swap_between(const PreferenceOrder& a, const PreferenceOrder& b) {
    return vote_distance(VoteMetric::Swap, a, b);
}

double mean_ballot_swaps(const CultureSpec& spec, const PreferenceOrder& central,
                         int samples, Rng& rng) {
    double total = 0.0;
    for (int i = 0; i < samples; ++i)
        total += static_cast<double>(
            swap_between(mallows_insertion_sample(spec.phi, central, rng), central));
    return total / samples;
}

}  // namespace

TEST_SUITE("cultures") {

TEST_CASE("every culture samples a valid election deterministically") {
    const std::vector<CultureSpec> specs = {
        CultureSpec::ic(),
        CultureSpec::urn(0.1),
        CultureSpec::mallows(0.5),
        CultureSpec::norm_mallows(0.5, 0.3),
        CultureSpec::simple(CultureKind::Walsh),
        CultureSpec::simple(CultureKind::Conitzer),
        CultureSpec::simple(CultureKind::SPOC),
        CultureSpec::simple(CultureKind::SingleCrossing),
        CultureSpec::group_separable(GSTree::Balanced),
        CultureSpec::group_separable(GSTree::Caterpillar),
        CultureSpec::euclidean(EuclideanSpace::Interval),
        CultureSpec::euclidean(EuclideanSpace::Disc),
        CultureSpec::euclidean(EuclideanSpace::Square),
        CultureSpec::euclidean(EuclideanSpace::Cube),
        CultureSpec::euclidean(EuclideanSpace::NCube, 5),
        CultureSpec::euclidean(EuclideanSpace::Circle),
        CultureSpec::euclidean(EuclideanSpace::Sphere),
        CultureSpec::euclidean(EuclideanSpace::NSphere, 4),
        CultureSpec::compass_culture(CompassKind::ID),
        CultureSpec::compass_culture(CompassKind::UN),
        CultureSpec::compass_culture(CompassKind::AN),
        CultureSpec::compass_culture(CompassKind::ST),
    };
    for (const auto& spec : specs) {
        Rng a(42), b(42);
        const OrdinalElection e1 = sample_election(spec, 6, 10, a);
        const OrdinalElection e2 = sample_election(spec, 6, 10, b);
        check_valid(e1);
        REQUIRE(e1.m() == 6);
        REQUIRE(e1.n() == 10);
        CHECK(e1.votes == e2.votes);
    }
    // a different seed almost surely moves an IC sample
    Rng a(1), b(2);
    CHECK(sample_election(CultureSpec::ic(), 6, 10, a).votes !=
          sample_election(CultureSpec::ic(), 6, 10, b).votes);
}

TEST_CASE("mallows endpoints: dispersion zero copies, dispersion one scrambles") {
    const PreferenceOrder central = identity_order(6);
    Rng rng(5);
    for (int i = 0; i < 50; ++i)
        CHECK(mallows_insertion_sample(0.0, central, rng).ranking == central.ranking);

    CultureSpec uniform = CultureSpec::mallows(1.0);
    uniform.central = central;
    Rng rng2(6);
    const OrdinalElection e = sample_election(uniform, 6, 20000, rng2);
    double total = 0.0;
    for (const auto& v : e.votes) total += static_cast<double>(swap_between(v, central));
    const double expected = 6.0 * 5.0 / 4.0;
    CHECK(total / e.n() == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("mallows mean displacement tracks the closed-form expectation") {
    const PreferenceOrder central = identity_order(6);
    Rng rng(7);
    const double empirical = mean_ballot_swaps(CultureSpec::mallows(0.3), central, 30000, rng);
    CHECK(empirical == doctest::Approx(mallows_expected_swaps(0.3, 6)).epsilon(0.02));
}

TEST_CASE("normalized dispersion inverts the expectation curve") {
    for (const int m : {5, 10}) {
        const double half_pairs = m * (m - 1) / 2.0;
        for (const double norm : {0.25, 0.5, 0.75}) {
            const double phi = normalize_phi(norm, m);
            CHECK(mallows_expected_swaps(phi, m) ==
                  doctest::Approx(norm / 2.0 * half_pairs).epsilon(1e-8));
        }
    }
    CHECK(normalize_phi(0.0, 8) == 0.0);
    CHECK(normalize_phi(1.0, 8) == 1.0);
    CHECK_THROWS_AS(normalize_phi(1.5, 8), std::invalid_argument);
}

TEST_CASE("norm-mallows weight reverses the requested vote share") {
    CultureSpec spec = CultureSpec::norm_mallows(0.0, 0.3);
    Rng rng(11);
    const OrdinalElection e = sample_election(spec, 5, 10, rng);
    // dispersion zero collapses onto the central vote, so the election is
    // three reversed copies followed by seven central ones
    for (int i = 1; i < 3; ++i) CHECK(e.votes[i] == e.votes[0]);
    for (int i = 4; i < 10; ++i) CHECK(e.votes[i] == e.votes[3]);
    CHECK(e.votes[0] == e.votes[3].reversed());
    CHECK_THROWS_AS(
        [&] {
            Rng r(1);
            sample_election(CultureSpec::norm_mallows(0.5, 0.6), 5, 10, r);
        }(),
        std::invalid_argument);
}

TEST_CASE("urn copies earlier votes at the contagion rate") {
    // with alpha = 1 and m = 3, the second vote repeats the first with
    // probability 1/2 + 1/2 * 1/3! = 7/12
    Rng rng(13);
    int repeats = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const OrdinalElection e = sample_election(CultureSpec::urn(1.0), 3, 2, rng);
        if (e.votes[0] == e.votes[1]) ++repeats;
    }
    CHECK(static_cast<double>(repeats) / trials == doctest::Approx(7.0 / 12.0).epsilon(0.035));

    CHECK(urn_expected_distinct_bound(0.0, 10) == doctest::Approx(10.0));
    CHECK(urn_expected_distinct_bound(0.5, 10) > urn_expected_distinct_bound(2.0, 10));
    CHECK_THROWS_AS(
        [&] {
            Rng r(1);
            sample_election(CultureSpec::urn(-0.5), 3, 2, r);
        }(),
        std::invalid_argument);
}

TEST_CASE("walsh and conitzer share a single-peaked axis") {
    for (const auto kind : {CultureKind::Walsh, CultureKind::Conitzer}) {
        Rng rng(17);
        const OrdinalElection e = sample_election(CultureSpec::simple(kind), 6, 40, rng);
        CHECK(exists_axis(e, single_peaked_on));
    }
}

TEST_CASE("interval voters are single-peaked too") {
    Rng rng(19);
    const OrdinalElection e =
        sample_election(CultureSpec::euclidean(EuclideanSpace::Interval), 6, 30, rng);
    CHECK(exists_axis(e, single_peaked_on));
}

TEST_CASE("spoc votes grow contiguous arcs") {
    Rng rng(23);
    const OrdinalElection e = sample_election(CultureSpec::simple(CultureKind::SPOC), 6, 40, rng);
    CHECK(exists_axis(e, circularly_peaked_on));
}

TEST_CASE("single-crossing samples admit a crossing order") {
    for (const std::uint64_t seed : {29u, 31u, 37u}) {
        Rng rng(seed);
        const OrdinalElection e =
            sample_election(CultureSpec::simple(CultureKind::SingleCrossing), 5, 30, rng);
        std::vector<PreferenceOrder> distinct(e.votes.begin(), e.votes.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        // the sampled orders sit on a swap geodesic, so sorting by distance
        // to one extreme recovers a crossing order
        std::size_t far_a = 0, far_b = 0;
        long long best = -1;
        for (std::size_t i = 0; i < distinct.size(); ++i)
            for (std::size_t j = i + 1; j < distinct.size(); ++j) {
                const long long d = swap_between(distinct[i], distinct[j]);
                if (d > best) {
                    best = d;
                    far_a = i;
                    far_b = j;
                }
            }
        const PreferenceOrder anchor = distinct[far_a];
        std::sort(distinct.begin(), distinct.end(),
                  [&](const PreferenceOrder& x, const PreferenceOrder& y) {
                      return swap_between(anchor, x) < swap_between(anchor, y);
                  });
        (void)far_b;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                int flips = 0;
                bool prev = false, have_prev = false;
                for (const auto& v : distinct) {
                    const auto pos = v.positions();
                    const bool a_over_b = pos[a] < pos[b];
                    if (have_prev && a_over_b != prev) ++flips;
                    prev = a_over_b;
                    have_prev = true;
                }
                CHECK(flips <= 1);
            }
    }
}

TEST_CASE("group-separable frontiers keep clone blocks contiguous") {
    Rng rng(41);
    const OrdinalElection bal =
        sample_election(CultureSpec::group_separable(GSTree::Balanced), 8, 60, rng);
    // the root splits the leaf order in half, so the top four candidates of
    // every vote form the same set or its complement
    std::set<int> top(bal.votes[0].ranking.begin(), bal.votes[0].ranking.begin() + 4);
    for (const auto& v : bal.votes) {
        std::set<int> cur(v.ranking.begin(), v.ranking.begin() + 4);
        bool matches = cur == top;
        if (!matches) {
            std::set<int> rest(v.ranking.begin() + 4, v.ranking.end());
            matches = rest == top;
        }
        CHECK(matches);
    }

    const OrdinalElection cat =
        sample_election(CultureSpec::group_separable(GSTree::Caterpillar), 8, 60, rng);
    // caterpillar spine: some candidate heads or tails every vote, and the
    // property repeats once it is removed
    std::vector<std::vector<int>> votes;
    for (const auto& v : cat.votes) votes.push_back(v.ranking);
    for (int level = 0; level < 2; ++level) {
        int spine = -1;
        for (int c = 0; c < 8; ++c) {
            bool everywhere = true;
            for (const auto& v : votes)
                if (v.front() != c && v.back() != c) {
                    everywhere = false;
                    break;
                }
            if (everywhere) {
                spine = c;
                break;
            }
        }
        REQUIRE(spine >= 0);
        for (auto& v : votes) v.erase(std::find(v.begin(), v.end(), spine));
    }

    // both trees admit at most 2^(m-1) distinct frontiers
    for (const auto* e : {&bal, &cat}) {
        std::set<std::vector<int>> distinct;
        for (const auto& v : e->votes) distinct.insert(v.ranking);
        CHECK(static_cast<int>(distinct.size()) <= 128);
    }
}

TEST_CASE("compass elections realize their defining shapes") {
    Rng rng(43);
    const OrdinalElection id = compass_election(CompassKind::ID, 5, 8, rng);
    for (const auto& v : id.votes) CHECK(v == identity_order(5));

    const OrdinalElection an = compass_election(CompassKind::AN, 5, 10, rng);
    for (int i = 0; i < 5; ++i) CHECK(an.votes[i] == identity_order(5));
    for (int i = 5; i < 10; ++i) CHECK(an.votes[i] == identity_order(5).reversed());
    CHECK_THROWS_AS(compass_election(CompassKind::AN, 5, 7, rng), std::invalid_argument);

    const OrdinalElection st = compass_election(CompassKind::ST, 6, 20, rng);
    for (const auto& v : st.votes) {
        std::set<int> upper(v.ranking.begin(), v.ranking.begin() + 3);
        CHECK(upper == std::set<int>{0, 1, 2});
    }
    CHECK_THROWS_AS(compass_election(CompassKind::ST, 5, 10, rng), std::invalid_argument);

    check_valid(compass_election(CompassKind::UN, 5, 9, rng));
}

TEST_CASE("sampler rejects malformed requests") {
    Rng rng(47);
    CHECK_THROWS_AS(sample_election(CultureSpec::ic(), 0, 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_election(CultureSpec::ic(), 5, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(mallows_insertion_sample(1.5, identity_order(4), rng),
                    std::invalid_argument);
    CultureSpec custom = CultureSpec::group_separable(GSTree::Custom);
    CHECK_THROWS_AS(sample_election(custom, 5, 5, rng), std::invalid_argument);
    CultureSpec bad_central = CultureSpec::mallows(0.5);
    bad_central.central = identity_order(3);
    CHECK_THROWS_AS(sample_election(bad_central, 5, 5, rng), std::invalid_argument);
}

}  // TEST_SUITE
