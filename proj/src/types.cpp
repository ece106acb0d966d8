#include "votemap/types.hpp"

#include <cmath>

namespace votemap {

double Rng::next_normal() {
    // Marsaglia polar method; consumes a variable number of draws but is
    // fully deterministic for a fixed stream.
    double u, v, s;
    do {
        u = 2.0 * next_double() - 1.0;
        v = 2.0 * next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
}

void check_valid(const OrdinalElection& e) {
    if (e.num_candidates < 1) throw std::invalid_argument("election needs at least one candidate");
    if (e.votes.empty()) throw std::invalid_argument("election needs at least one vote");
    std::vector<char> seen(e.num_candidates);
    for (const auto& v : e.votes) {
        if (v.size() != e.num_candidates)
            throw std::invalid_argument("vote length differs from candidate count");
        std::fill(seen.begin(), seen.end(), 0);
        for (int c : v.ranking) {
            if (c < 0 || c >= e.num_candidates || seen[c])
                throw std::invalid_argument("vote is not a permutation of the candidates");
            seen[c] = 1;
        }
    }
}

void check_valid(const ApprovalElection& e) {
    if (e.num_candidates < 1) throw std::invalid_argument("election needs at least one candidate");
    if (e.votes.empty()) throw std::invalid_argument("election needs at least one vote");
    for (const auto& b : e.votes) {
        int prev = -1;
        for (int c : b.approved) {
            if (c < 0 || c >= e.num_candidates) throw std::invalid_argument("approved index out of range");
            if (c <= prev) throw std::invalid_argument("ballot must be sorted and duplicate-free");
            prev = c;
        }
    }
}

PreferenceOrder identity_order(int m) {
    PreferenceOrder v;
    v.ranking.resize(m);
    for (int i = 0; i < m; ++i) v.ranking[i] = i;
    return v;
}

}  // namespace votemap
