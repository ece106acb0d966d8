#include <algorithm>
#include <cstdlib>
#include <map>
#include <vector>

#include "doctest.h"
#include "votemap/core.hpp"
#include "votemap/cultures.hpp"
#include "votemap/distances.hpp"
#include "votemap/subelections.hpp"

using namespace votemap;

namespace {

OrdinalElection make_election(int m, const std::vector<std::vector<int>>& rankings) {
    OrdinalElection e;
    e.num_candidates = m;
    for (const auto& r : rankings) e.votes.push_back(PreferenceOrder{r});
    check_valid(e);
    return e;
}

OrdinalElection worked_left() { return make_election(3, {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}}); }
OrdinalElection worked_right() { return make_election(3, {{0, 1, 2}, {2, 0, 1}, {1, 0, 2}}); }

long long slow_vote_distance(VoteMetric metric, const PreferenceOrder& a,
                             const PreferenceOrder& b) {
    const auto pa = a.positions();
    const auto pb = b.positions();
    const int m = a.size();
    long long d = 0;
    switch (metric) {
        case VoteMetric::Swap:
            for (int c = 0; c < m; ++c)
                for (int e = c + 1; e < m; ++e)
                    if ((pa[c] < pa[e]) != (pb[c] < pb[e])) ++d;
            break;
        case VoteMetric::Spearman:
            for (int c = 0; c < m; ++c) d += std::llabs(pa[c] - pb[c]);
            break;
        case VoteMetric::Discrete:
            d = a.ranking == b.ranking ? 0 : 1;
            break;
    }
    return d;
}

// Exhaustive reference: every candidate bijection crossed with every voter
// permutation.  Only sane for m, n up to four.
long long slow_iso_distance(VoteMetric metric, const OrdinalElection& e1,
                            const OrdinalElection& e2) {
    const int m = e1.m();
    const int n = e1.n();
    std::vector<int> sigma(m);
    for (int i = 0; i < m; ++i) sigma[i] = i;
    long long best = -1;
    do {
        std::vector<PreferenceOrder> mapped;
        for (const auto& v : e1.votes) {
            PreferenceOrder r = v;
            for (auto& c : r.ranking) c = sigma[c];
            mapped.push_back(std::move(r));
        }
        std::vector<int> nu(n);
        for (int i = 0; i < n; ++i) nu[i] = i;
        do {
            long long total = 0;
            for (int i = 0; i < n; ++i)
                total += slow_vote_distance(metric, mapped[i], e2.votes[nu[i]]);
            if (best < 0 || total < best) best = total;
        } while (std::next_permutation(nu.begin(), nu.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

// Counts multisets of n votes over m candidates up to relabeling, by the
// orbit-counting average of multisets fixed by each relabeling.
long long anec_by_burnside(int m, int n) {
    std::vector<PreferenceOrder> orders;
    PreferenceOrder v = identity_order(m);
    do {
        orders.push_back(v);
    } while (std::next_permutation(v.ranking.begin(), v.ranking.end()));

    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < orders.size(); ++i) index[orders[i].ranking] = static_cast<int>(i);

    std::vector<int> sigma(m);
    for (int i = 0; i < m; ++i) sigma[i] = i;
    long long numerator = 0, group = 0;
    do {
        ++group;
        // cycle lengths of the induced permutation on rankings
        std::vector<int> image(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            PreferenceOrder r = orders[i];
            for (auto& c : r.ranking) c = sigma[c];
            image[i] = index[r.ranking];
        }
        std::vector<char> seen(orders.size(), 0);
        std::vector<int> cycle_lengths;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (seen[i]) continue;
            int len = 0, cur = static_cast<int>(i);
            while (!seen[cur]) {
                seen[cur] = 1;
                cur = image[cur];
                ++len;
            }
            cycle_lengths.push_back(len);
        }
        // invariant multisets give each cycle a uniform multiplicity, so
        // count solutions of sum(len * y) = n by coin-change
        std::vector<long long> ways(n + 1, 0);
        ways[0] = 1;
        for (int len : cycle_lengths)
            for (int s = len; s <= n; ++s) ways[s] += ways[s - len];
        numerator += ways[n];
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return numerator / group;
}

std::vector<OrdinalElection> all_multisets(int m, int n) {
    std::vector<PreferenceOrder> orders;
    PreferenceOrder v = identity_order(m);
    do {
        orders.push_back(v);
    } while (std::next_permutation(v.ranking.begin(), v.ranking.end()));

    std::vector<OrdinalElection> out;
    std::vector<int> pick(n, 0);
    while (true) {
        OrdinalElection e;
        e.num_candidates = m;
        for (int i : pick) e.votes.push_back(orders[i]);
        out.push_back(std::move(e));
        int i = n - 1;
        while (i >= 0 && pick[i] == static_cast<int>(orders.size()) - 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[i];
    }
    return out;
}

}  // namespace

TEST_SUITE("distances") {

TEST_CASE("vote distances on the five-candidate pair") {
    const PreferenceOrder u{{0, 1, 2, 3, 4}};
    const PreferenceOrder v{{1, 0, 4, 2, 3}};
    CHECK(vote_distance(VoteMetric::Swap, u, v) == 3);
    CHECK(vote_distance(VoteMetric::Spearman, u, v) == 6);
    CHECK(vote_distance(VoteMetric::Discrete, u, v) == 1);
    CHECK(vote_distance(VoteMetric::Swap, u, u) == 0);
    CHECK(vote_distance(VoteMetric::Discrete, v, v) == 0);
    CHECK(vote_distance(VoteMetric::Swap, u, u.reversed()) == 10);
    CHECK(vote_distance(VoteMetric::Spearman, u, u.reversed()) == 12);
}

TEST_CASE("iso distances match exhaustive enumeration") {
    Rng rng(2024);
    const std::vector<CultureSpec> pool = {CultureSpec::ic(), CultureSpec::urn(1.0),
                                           CultureSpec::mallows(0.3)};
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + rng.next_int(3);
        const int n = 2 + rng.next_int(3);
        const auto& c1 = pool[static_cast<std::size_t>(rng.next_int(3))];
        const auto& c2 = pool[static_cast<std::size_t>(rng.next_int(3))];
        const OrdinalElection e1 = sample_election(c1, m, n, rng);
        const OrdinalElection e2 = sample_election(c2, m, n, rng);
        for (const auto metric :
             {VoteMetric::Swap, VoteMetric::Spearman, VoteMetric::Discrete}) {
            CHECK(iso_distance(metric, e1, e2) == slow_iso_distance(metric, e1, e2));
        }
        CHECK(iso_swap_distance(e1, e2) == slow_iso_distance(VoteMetric::Swap, e1, e2));
    }
}

TEST_CASE("iso distances vanish exactly on isomorphic pairs") {
    Rng rng(55);
    const OrdinalElection e = sample_election(CultureSpec::ic(), 5, 7, rng);
    OrdinalElection f;
    f.num_candidates = 5;
    std::vector<int> sigma{3, 0, 4, 1, 2};
    for (const auto& v : e.votes) f.votes.push_back(relabel_vote(v, sigma));
    rng.shuffle(f.votes);
    for (const auto metric : {VoteMetric::Swap, VoteMetric::Spearman, VoteMetric::Discrete})
        CHECK(iso_distance(metric, e, f) == 0);
    CHECK(iso_swap_distance(e, f) == 0);

    const OrdinalElection a = make_election(3, {{0, 1, 2}, {0, 1, 2}});
    const OrdinalElection b = make_election(3, {{0, 1, 2}, {0, 2, 1}});
    for (const auto metric : {VoteMetric::Swap, VoteMetric::Spearman, VoteMetric::Discrete})
        CHECK(iso_distance(metric, a, b) > 0);
}

TEST_CASE("matching constraints pin parts of the search") {
    const OrdinalElection e1 = make_election(3, {{0, 1, 2}, {2, 1, 0}});
    const OrdinalElection e2 = make_election(3, {{1, 0, 2}, {2, 0, 1}});

    MatchingConstraint pin_sigma;
    pin_sigma.candidate_map = std::vector<int>{0, 1, 2};
    long long fixed = iso_distance(VoteMetric::Swap, e1, e2, pin_sigma);
    CHECK(fixed >= iso_distance(VoteMetric::Swap, e1, e2));
    // identity sigma leaves votes {012, 210} against {102, 201}; the best
    // pairing costs 1 + 1
    CHECK(fixed == 2);

    MatchingConstraint pin_nu;
    pin_nu.voter_map = std::vector<int>{0, 1};
    CHECK(iso_distance(VoteMetric::Swap, e1, e2, pin_nu) >=
          iso_distance(VoteMetric::Swap, e1, e2));

    MatchingConstraint bad;
    bad.voter_map = std::vector<int>{0, 0};
    CHECK_THROWS_AS(iso_distance(VoteMetric::Swap, e1, e2, bad), std::invalid_argument);
}

TEST_CASE("budget guards refuse oversized exact searches") {
    Rng rng(60);
    const OrdinalElection big1 = sample_election(CultureSpec::ic(), 9, 4, rng);
    const OrdinalElection big2 = sample_election(CultureSpec::ic(), 9, 4, rng);
    CHECK_THROWS_AS(iso_distance(VoteMetric::Swap, big1, big2), BudgetError);
    CHECK_THROWS_AS(iso_swap_distance(big1, big2, 5), BudgetError);
    CHECK_NOTHROW(iso_distance(VoteMetric::Discrete, big1, big2));

    const OrdinalElection wide1 = sample_election(CultureSpec::ic(), 11, 3, rng);
    const OrdinalElection wide2 = sample_election(CultureSpec::ic(), 11, 3, rng);
    CHECK_THROWS_AS(pairwise_distance(wide1, wide2), BudgetError);
}

TEST_CASE("the worked three-by-three pair scores two under every aggregate") {
    const OrdinalElection e1 = worked_left();
    const OrdinalElection e2 = worked_right();
    CHECK(positionwise_distance(e1, e2) == doctest::Approx(2.0));
    CHECK(pairwise_distance(e1, e2) == doctest::Approx(2.0));
    CHECK(bordawise_distance(e1, e2) == doctest::Approx(2.0));
    CHECK(positionwise_distance(e1, e2, PositionwiseNorm::EMD, MatrixForm::Frequency) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(positionwise_distance(e1, e1) == doctest::Approx(0.0));
    CHECK(bordawise_distance(e2, e2) == doctest::Approx(0.0));
}

TEST_CASE("counts form requires equal electorates, frequencies do not") {
    Rng rng(61);
    const OrdinalElection a = sample_election(CultureSpec::ic(), 4, 6, rng);
    const OrdinalElection b = sample_election(CultureSpec::ic(), 4, 9, rng);
    CHECK_THROWS_AS(positionwise_distance(a, b), std::invalid_argument);
    CHECK_THROWS_AS(bordawise_distance(a, b), std::invalid_argument);
    CHECK_NOTHROW(positionwise_distance(a, b, PositionwiseNorm::EMD, MatrixForm::Frequency));
    CHECK_NOTHROW(bordawise_distance(a, b, MatrixForm::Frequency));
}

TEST_CASE("pairwise branch and bound equals explicit bijection search") {
    Rng rng(62);
    for (int trial = 0; trial < 25; ++trial) {
        const int m = 2 + rng.next_int(4);
        const int n = 2 + rng.next_int(5);
        const OrdinalElection e1 = sample_election(CultureSpec::ic(), m, n, rng);
        const OrdinalElection e2 = sample_election(CultureSpec::ic(), m, n, rng);
        const PairwiseMatrix w1 = pairwise_matrix(e1);
        const PairwiseMatrix w2 = pairwise_matrix(e2);

        std::vector<int> sigma(m);
        for (int i = 0; i < m; ++i) sigma[i] = i;
        double best = -1.0;
        do {
            double total = 0.0;
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d) {
                    if (c == d) continue;
                    total += std::abs(static_cast<double>(w1.wins[c][d]) -
                                      static_cast<double>(w2.wins[sigma[c]][sigma[d]]));
                }
            if (best < 0 || total < best) best = total;
        } while (std::next_permutation(sigma.begin(), sigma.end()));

        CHECK(pairwise_distance(e1, e2) == doctest::Approx(best));
    }
}

TEST_CASE("bordawise compares sorted score vectors") {
    Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        const OrdinalElection e1 = sample_election(CultureSpec::ic(), 5, 8, rng);
        const OrdinalElection e2 = sample_election(CultureSpec::urn(0.5), 5, 8, rng);
        std::vector<double> b1, b2;
        for (long long s : borda_vector(e1).scores) b1.push_back(static_cast<double>(s));
        for (long long s : borda_vector(e2).scores) b2.push_back(static_cast<double>(s));
        std::sort(b1.rbegin(), b1.rend());
        std::sort(b2.rbegin(), b2.rend());
        CHECK(bordawise_distance(e1, e2) == doctest::Approx(emd(b1, b2)));
    }
}

TEST_CASE("all metrics are symmetric pseudometrics on a mixed bag") {
    Rng rng(64);
    std::vector<OrdinalElection> bag;
    for (const auto& spec :
         {CultureSpec::ic(), CultureSpec::urn(2.0), CultureSpec::mallows(0.2),
          CultureSpec::simple(CultureKind::Walsh), CultureSpec::simple(CultureKind::SingleCrossing),
          CultureSpec::compass_culture(CompassKind::ID),
          CultureSpec::compass_culture(CompassKind::AN)}) {
        bag.push_back(sample_election(spec, 5, 6, rng));
    }
    const int k = static_cast<int>(bag.size());

    auto evaluate = [&](int i, int j) {
        std::vector<double> out;
        out.push_back(static_cast<double>(iso_distance(VoteMetric::Swap, bag[i], bag[j])));
        out.push_back(static_cast<double>(iso_distance(VoteMetric::Spearman, bag[i], bag[j])));
        out.push_back(static_cast<double>(iso_distance(VoteMetric::Discrete, bag[i], bag[j])));
        out.push_back(positionwise_distance(bag[i], bag[j]));
        out.push_back(positionwise_distance(bag[i], bag[j], PositionwiseNorm::L1));
        out.push_back(pairwise_distance(bag[i], bag[j]));
        out.push_back(bordawise_distance(bag[i], bag[j]));
        return out;
    };

    std::vector<std::vector<std::vector<double>>> d(
        k, std::vector<std::vector<double>>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) d[i][j] = evaluate(i, j);

    for (int metric = 0; metric < 7; ++metric) {
        for (int i = 0; i < k; ++i) {
            CHECK(d[i][i][metric] == doctest::Approx(0.0));
            for (int j = 0; j < k; ++j) {
                CHECK(d[i][j][metric] == doctest::Approx(d[j][i][metric]));
                for (int l = 0; l < k; ++l)
                    CHECK(d[i][l][metric] <= d[i][j][metric] + d[j][l][metric] + 1e-9);
            }
        }
    }
}

TEST_CASE("distance_matrix fills a labelled symmetric table") {
    Rng rng(65);
    std::vector<OrdinalElection> dataset;
    for (int i = 0; i < 4; ++i) dataset.push_back(sample_election(CultureSpec::ic(), 4, 5, rng));
    const std::vector<std::string> labels{"a", "b", "c", "d"};
    const DistanceMatrix dm =
        distance_matrix(dataset, ElectionMetric::EmdPositionwise, {}, labels);
    REQUIRE(dm.size() == 4);
    CHECK(dm.labels == labels);
    for (int i = 0; i < 4; ++i) {
        CHECK(dm.at(i, i) == doctest::Approx(0.0));
        for (int j = 0; j < 4; ++j) {
            CHECK(dm.at(i, j) == doctest::Approx(dm.at(j, i)));
            CHECK(dm.at(i, j) == doctest::Approx(positionwise_distance(dataset[i], dataset[j])));
        }
    }
    const DistanceMatrix unnamed = distance_matrix(dataset, ElectionMetric::Bordawise);
    CHECK(unnamed.labels == std::vector<std::string>{"0", "1", "2", "3"});
}

TEST_CASE("normalization divides by the identity-uniformity diameter") {
    CHECK(normalize_distance(5.0, ElectionMetric::EmdPositionwise, 4, -1,
                             MatrixForm::Frequency) == doctest::Approx(1.0));
    CHECK(normalize_distance(10.0, ElectionMetric::EmdPositionwise, 4, 2,
                             MatrixForm::Counts) == doctest::Approx(1.0));
    CHECK(normalize_distance(6.0, ElectionMetric::L1Positionwise, 4, -1,
                             MatrixForm::Frequency) == doctest::Approx(1.0));
    CHECK(normalize_distance(6.0, ElectionMetric::Pairwise, 4, -1, MatrixForm::Frequency) ==
          doctest::Approx(1.0));
    CHECK(normalize_distance(5.0, ElectionMetric::Bordawise, 4, -1, MatrixForm::Frequency) ==
          doctest::Approx(1.0));
    CHECK(normalize_distance(72.0, ElectionMetric::Swap, 4, 24) == doctest::Approx(1.0));
    CHECK(normalize_distance(23.0, ElectionMetric::Discrete, 4, 24) == doctest::Approx(1.0));
    CHECK_THROWS_AS(normalize_distance(1.0, ElectionMetric::Spearman, 4, 24),
                    std::invalid_argument);
    CHECK_THROWS_AS(normalize_distance(1.0, ElectionMetric::Swap, 4, -1),
                    std::invalid_argument);
}

TEST_CASE("equivalence class counts match the orbit-counting oracle") {
    for (int n = 1; n <= 5; ++n) {
        CHECK(count_equivalence_classes(2, n, EquivalenceRelation::ANEC) ==
              anec_by_burnside(2, n));
        CHECK(count_equivalence_classes(3, n, EquivalenceRelation::ANEC) ==
              anec_by_burnside(3, n));
    }
    CHECK(count_equivalence_classes(3, 3, EquivalenceRelation::ANEC) == 10);
    CHECK(count_equivalence_classes(3, 3, EquivalenceRelation::Positionwise) == 10);
    CHECK(count_equivalence_classes(3, 3, EquivalenceRelation::Pairwise) == 8);
    CHECK(count_equivalence_classes(3, 3, EquivalenceRelation::Bordawise) == 8);
    CHECK_THROWS_AS(count_equivalence_classes(5, 2, EquivalenceRelation::ANEC), BudgetError);
    CHECK_THROWS_AS(count_equivalence_classes(4, 6, EquivalenceRelation::ANEC), BudgetError);
}

TEST_CASE("positionwise is strictly coarser than isomorphism at 3x4") {
    // the class table says 24 isomorphism classes collapse to 23
    // positionwise ones here, so a witness pair must exist
    const auto elections = all_multisets(3, 4);
    bool found = false;
    for (std::size_t i = 0; i < elections.size() && !found; ++i) {
        for (std::size_t j = i + 1; j < elections.size() && !found; ++j) {
            if (positionwise_distance(elections[i], elections[j]) > 1e-9) continue;
            if (elections_isomorphic(elections[i], elections[j]).isomorphic) continue;
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("pairwise is strictly coarser than positionwise at 3x3") {
    const auto elections = all_multisets(3, 3);
    bool found = false;
    for (std::size_t i = 0; i < elections.size() && !found; ++i) {
        for (std::size_t j = i + 1; j < elections.size() && !found; ++j) {
            if (pairwise_distance(elections[i], elections[j]) > 1e-9) continue;
            if (positionwise_distance(elections[i], elections[j]) <= 1e-9) continue;
            found = true;
        }
    }
    CHECK(found);
}

}  // TEST_SUITE
