#include "votemap/subelections.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "votemap/assignment.hpp"
#include "votemap/core.hpp"

namespace votemap {

namespace {

bool is_candidate_permutation(const std::vector<int>& sigma, int m) {
    if (static_cast<int>(sigma.size()) != m) return false;
    std::vector<char> seen(m, 0);
    for (int c : sigma) {
        if (c < 0 || c >= m || seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

// Multiset of vote rankings with indices available for pairing.  Indices are
// stored descending so back() always hands out the smallest remaining one.
std::map<std::vector<int>, std::vector<int>> vote_slots(const OrdinalElection& e) {
    std::map<std::vector<int>, std::vector<int>> slots;
    for (int j = e.n() - 1; j >= 0; --j) slots[e.votes[j].ranking].push_back(j);
    return slots;
}

// Pairs as many votes of e as possible with equal votes of f once e has been
// relabeled by sigma.  Votes of e are consumed in index order and matched to
// the smallest free index of f.
std::vector<std::pair<int, int>> matched_voter_pairs(const OrdinalElection& e,
                                                     const OrdinalElection& f,
                                                     const std::vector<int>& sigma) {
    auto slots = vote_slots(f);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < e.n(); ++i) {
        auto it = slots.find(relabel_vote(e.votes[i], sigma).ranking);
        if (it == slots.end() || it->second.empty()) continue;
        pairs.emplace_back(i, it->second.back());
        it->second.pop_back();
    }
    return pairs;
}

// Does every vote of e_small, relabeled by sigma, fit into e_big's vote
// multiset with multiplicity to spare?
bool contained_under(const OrdinalElection& e_small, const OrdinalElection& e_big,
                     const std::vector<int>& sigma) {
    std::map<std::vector<int>, int> counts;
    for (const auto& u : e_big.votes) ++counts[u.ranking];
    for (const auto& v : e_small.votes) {
        auto it = counts.find(relabel_vote(v, sigma).ranking);
        if (it == counts.end() || it->second == 0) return false;
        --it->second;
    }
    return true;
}

}  // namespace

IsomorphismWitness elections_isomorphic(const OrdinalElection& e1,
                                        const OrdinalElection& e2) {
    check_valid(e1);
    check_valid(e2);
    IsomorphismWitness witness;
    if (e1.m() != e2.m() || e1.n() != e2.n()) return witness;

    const int m = e1.m();
    if (e1.n() == 0) {
        witness.isomorphic = true;
        for (int c = 0; c < m; ++c) witness.candidate_map.push_back(c);
        return witness;
    }

    // Any isomorphism must map vote 0 of e1 onto some vote of e2, and that
    // pair pins the candidate bijection completely.
    std::set<std::vector<int>> tried;
    for (int j = 0; j < e2.n(); ++j) {
        std::vector<int> sigma = matching_relabeling(e1.votes[0], e2.votes[j]);
        if (!tried.insert(sigma).second) continue;
        auto pairs = matched_voter_pairs(e1, e2, sigma);
        if (static_cast<int>(pairs.size()) != e1.n()) continue;
        witness.isomorphic = true;
        witness.candidate_map = std::move(sigma);
        witness.voter_map.assign(e1.n(), -1);
        for (auto [a, b] : pairs) witness.voter_map[a] = b;
        return witness;
    }
    return witness;
}

CommonVoterSubelection max_common_voter_subelection(const OrdinalElection& e,
                                                    const OrdinalElection& f) {
    check_valid(e);
    check_valid(f);
    if (e.m() != f.m())
        throw std::invalid_argument(
            "max_common_voter_subelection: candidate counts differ");

    CommonVoterSubelection best;
    for (int c = 0; c < e.m(); ++c) best.candidate_map.push_back(c);
    if (e.n() == 0 || f.n() == 0) return best;

    // The optimal bijection maps some matched vote of e onto its partner in
    // f, so scanning bijections seeded by every vote pair is exhaustive.
    const int limit = std::min(e.n(), f.n());
    std::set<std::vector<int>> tried;
    for (int i = 0; i < e.n(); ++i) {
        for (int j = 0; j < f.n(); ++j) {
            std::vector<int> sigma = matching_relabeling(e.votes[i], f.votes[j]);
            if (!tried.insert(sigma).second) continue;
            auto pairs = matched_voter_pairs(e, f, sigma);
            if (static_cast<int>(pairs.size()) > best.size) {
                best.size = static_cast<int>(pairs.size());
                best.voter_pairs = std::move(pairs);
                best.candidate_map = std::move(sigma);
                if (best.size == limit) return best;
            }
        }
    }
    return best;
}

bool voter_subelection_isomorphic(const OrdinalElection& e_small,
                                  const OrdinalElection& e_big,
                                  const MatchingConstraint& constraint) {
    check_valid(e_small);
    check_valid(e_big);
    if (e_small.m() != e_big.m()) return false;
    if (e_small.n() > e_big.n()) return false;
    const int m = e_small.m();

    if (constraint.candidate_map &&
        !is_candidate_permutation(*constraint.candidate_map, m))
        throw std::invalid_argument(
            "voter_subelection_isomorphic: candidate_map is not a permutation");

    if (constraint.voter_map) {
        const auto& vm = *constraint.voter_map;
        if (static_cast<int>(vm.size()) != e_small.n())
            throw std::invalid_argument(
                "voter_subelection_isomorphic: voter_map has wrong length");
        std::vector<char> used(e_big.n(), 0);
        for (int j : vm) {
            if (j < 0 || j >= e_big.n() || used[j])
                throw std::invalid_argument(
                    "voter_subelection_isomorphic: voter_map is not injective");
            used[j] = 1;
        }
        if (e_small.n() == 0) return true;
        std::vector<int> sigma =
            constraint.candidate_map
                ? *constraint.candidate_map
                : matching_relabeling(e_small.votes[0], e_big.votes[vm[0]]);
        for (int i = 0; i < e_small.n(); ++i)
            if (relabel_vote(e_small.votes[i], sigma).ranking !=
                e_big.votes[vm[i]].ranking)
                return false;
        return true;
    }

    if (constraint.candidate_map)
        return contained_under(e_small, e_big, *constraint.candidate_map);

    if (e_small.n() == 0) return true;
    std::set<std::vector<int>> tried;
    for (int j = 0; j < e_big.n(); ++j) {
        std::vector<int> sigma = matching_relabeling(e_small.votes[0], e_big.votes[j]);
        if (!tried.insert(sigma).second) continue;
        if (contained_under(e_small, e_big, sigma)) return true;
    }
    return false;
}

bool subelection_isomorphic_with_candidate_matching(
    const OrdinalElection& e_small, const OrdinalElection& e_big,
    const std::vector<int>& candidate_map) {
    check_valid(e_small);
    check_valid(e_big);
    if (e_small.m() > e_big.m() || e_small.n() > e_big.n()) return false;
    if (static_cast<int>(candidate_map.size()) != e_small.m())
        throw std::invalid_argument(
            "subelection_isomorphic_with_candidate_matching: injection has wrong "
            "length");
    std::vector<char> hit(e_big.m(), 0);
    for (int c : candidate_map) {
        if (c < 0 || c >= e_big.m() || hit[c])
            throw std::invalid_argument(
                "subelection_isomorphic_with_candidate_matching: not an injection");
        hit[c] = 1;
    }

    // Vote v of the small election is compatible with vote u of the big one
    // when u, restricted to the image of the injection, orders those
    // candidates exactly as v does.  A perfect matching on the small side
    // then certifies the subelection.
    std::vector<std::vector<int>> big_pos(e_big.n());
    for (int j = 0; j < e_big.n(); ++j) big_pos[j] = e_big.votes[j].positions();

    std::vector<std::vector<int>> adjacency(e_small.n());
    for (int i = 0; i < e_small.n(); ++i) {
        const auto& ranking = e_small.votes[i].ranking;
        for (int j = 0; j < e_big.n(); ++j) {
            bool ok = true;
            for (int t = 1; t < e_small.m() && ok; ++t)
                ok = big_pos[j][candidate_map[ranking[t - 1]]] <
                     big_pos[j][candidate_map[ranking[t]]];
            if (ok) adjacency[i].push_back(j);
        }
    }
    return max_bipartite_matching(adjacency, e_big.n()) == e_small.n();
}

bool brute_force_subelection(const OrdinalElection& e_small,
                             const OrdinalElection& e_big,
                             SubelectionVariant variant) {
    check_valid(e_small);
    check_valid(e_big);
    if (e_big.m() > 8)
        throw BudgetError("brute_force_subelection: refusing more than 8 candidates");

    switch (variant) {
        case SubelectionVariant::Voter:
            if (e_small.m() != e_big.m()) return false;
            break;
        case SubelectionVariant::Candidate:
            if (e_small.n() != e_big.n()) return false;
            break;
        case SubelectionVariant::General:
            break;
    }
    if (e_small.m() > e_big.m() || e_small.n() > e_big.n()) return false;

    std::vector<int> injection(e_small.m());
    std::vector<char> used(e_big.m(), 0);
    auto recurse = [&](auto&& self, int depth) -> bool {
        if (depth == e_small.m())
            return subelection_isomorphic_with_candidate_matching(e_small, e_big,
                                                                  injection);
        for (int c = 0; c < e_big.m(); ++c) {
            if (used[c]) continue;
            used[c] = 1;
            injection[depth] = c;
            if (self(self, depth + 1)) return true;
            used[c] = 0;
        }
        return false;
    };
    return recurse(recurse, 0);
}

SimilarityMatrix culture_similarity_matrix(const std::vector<CultureSpec>& specs,
                                           int m, int n, int trials, Rng& rng) {
    if (trials < 1)
        throw std::invalid_argument("culture_similarity_matrix: trials must be >= 1");
    if (n < 1)
        throw std::invalid_argument("culture_similarity_matrix: n must be >= 1");

    const int k = static_cast<int>(specs.size());
    SimilarityMatrix out;
    out.mean.assign(k, std::vector<double>(k, 0.0));
    out.stddev.assign(k, std::vector<double>(k, 0.0));

    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            std::vector<double> fractions(trials);
            for (int t = 0; t < trials; ++t) {
                OrdinalElection e = sample_election(specs[i], m, n, rng);
                OrdinalElection f = sample_election(specs[j], m, n, rng);
                fractions[t] =
                    static_cast<double>(max_common_voter_subelection(e, f).size) / n;
            }
            double mean = 0.0;
            for (double x : fractions) mean += x;
            mean /= trials;
            double var = 0.0;
            for (double x : fractions) var += (x - mean) * (x - mean);
            var /= trials;
            out.mean[i][j] = out.mean[j][i] = mean;
            out.stddev[i][j] = out.stddev[j][i] = std::sqrt(var);
        }
    }
    return out;
}

}  // namespace votemap
