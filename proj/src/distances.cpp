#include "votemap/distances.hpp"

#include <climits>
#include <cstdint>
#include <cstdlib>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "votemap/assignment.hpp"
#include "votemap/core.hpp"

namespace votemap {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_same_shape(const OrdinalElection& e1, const OrdinalElection& e2,
                      bool same_n) {
    require(e1.m() == e2.m(), "elections have different numbers of candidates");
    if (same_n) require(e1.n() == e2.n(), "elections have different numbers of voters");
}

bool is_permutation_of(const std::vector<int>& p, int k) {
    if (static_cast<int>(p.size()) != k) return false;
    std::vector<bool> seen(k, false);
    for (int v : p) {
        if (v < 0 || v >= k || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

long long swap_distance_by_positions(const std::vector<int>& pu,
                                     const std::vector<int>& pv) {
    long long d = 0;
    int m = static_cast<int>(pu.size());
    for (int c = 0; c < m; ++c)
        for (int e = c + 1; e < m; ++e)
            if ((pu[c] < pu[e]) != (pv[c] < pv[e])) ++d;
    return d;
}

// Swap distance between sigma(v) and u, both given as position arrays.
long long swap_distance_mapped(const std::vector<int>& pv, const std::vector<int>& pu,
                               const std::vector<int>& sigma) {
    long long d = 0;
    int m = static_cast<int>(pv.size());
    for (int c = 0; c < m; ++c)
        for (int e = c + 1; e < m; ++e)
            if ((pv[c] < pv[e]) != (pu[sigma[c]] < pu[sigma[e]])) ++d;
    return d;
}

long long spearman_distance_mapped(const std::vector<int>& pv, const std::vector<int>& pu,
                                   const std::vector<int>& sigma) {
    long long d = 0;
    for (int c = 0; c < static_cast<int>(pv.size()); ++c)
        d += std::llabs(pv[c] - pu[sigma[c]]);
    return d;
}

std::vector<std::vector<int>> all_positions(const OrdinalElection& e) {
    std::vector<std::vector<int>> p;
    p.reserve(e.n());
    for (const auto& v : e.votes) p.push_back(v.positions());
    return p;
}

// Minimum-cost voter matching for a fixed candidate bijection.
AssignmentResult vote_matching(VoteMetric metric, const OrdinalElection& e1,
                               const OrdinalElection& e2,
                               const std::vector<int>& sigma) {
    auto p1 = all_positions(e1), p2 = all_positions(e2);
    int n = e1.n();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long long d = 0;
            switch (metric) {
                case VoteMetric::Swap: d = swap_distance_mapped(p1[i], p2[j], sigma); break;
                case VoteMetric::Spearman: d = spearman_distance_mapped(p1[i], p2[j], sigma); break;
                case VoteMetric::Discrete: {
                    d = 0;
                    for (int c = 0; c < e1.m() && d == 0; ++c)
                        if (p1[i][c] != p2[j][sigma[c]]) d = 1;
                    break;
                }
            }
            cost[i][j] = static_cast<double>(d);
        }
    }
    return solve_assignment(cost);
}

// Smallest-cost assignment whose row-to-column map is lexicographically
// minimal among all optimal ones: pin rows in order, keeping a column only
// if an optimal completion still exists.
std::vector<int> lex_min_optimal_assignment(std::vector<std::vector<double>> cost) {
    const double eps = 1e-7;
    int k = static_cast<int>(cost.size());
    double opt = solve_assignment(cost).cost;
    std::vector<int> pick(k, -1);
    std::vector<bool> used(k, false);
    double pinned = 0.0;
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            if (used[c]) continue;
            // residual problem over rows r+1.. and the still-free columns
            std::vector<std::vector<double>> rest;
            for (int r2 = r + 1; r2 < k; ++r2) {
                std::vector<double> row;
                for (int c2 = 0; c2 < k; ++c2)
                    if (!used[c2] && c2 != c) row.push_back(cost[r2][c2]);
                rest.push_back(std::move(row));
            }
            double total = pinned + cost[r][c] +
                           (rest.empty() ? 0.0 : solve_assignment(rest).cost);
            if (total <= opt + eps) {
                pick[r] = c;
                used[c] = true;
                pinned += cost[r][c];
                break;
            }
        }
    }
    return pick;
}

// Number of exactly matching votes under sigma (multiset intersection).
int matched_votes(const OrdinalElection& e1, const OrdinalElection& e2,
                  const std::vector<int>& sigma) {
    std::map<std::vector<int>, int> counts;
    for (const auto& u : e2.votes) ++counts[u.ranking];
    int matched = 0;
    for (const auto& v : e1.votes) {
        auto it = counts.find(relabel_vote(v, sigma).ranking);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++matched;
        }
    }
    return matched;
}

// The discrete distance only depends on how many votes coincide after
// relabeling.  If any vote of E1 maps onto a vote of E2, the bijection is
// fully determined by that pair, so trying all n^2 derived bijections
// (plus the identity fallback) is exhaustive.
IsoDistanceResult discrete_free_search(const OrdinalElection& e1,
                                       const OrdinalElection& e2) {
    int n = e1.n(), m = e1.m();
    std::set<std::vector<int>> candidates;
    candidates.insert(identity_order(m).ranking);
    for (const auto& v : e1.votes)
        for (const auto& u : e2.votes) candidates.insert(matching_relabeling(v, u));

    IsoDistanceResult best;
    best.distance = n + 1;
    for (const auto& sigma : candidates) {
        long long d = n - matched_votes(e1, e2, sigma);
        if (d < best.distance) {
            best.distance = d;
            best.candidate_map = sigma;
        }
    }

    // deterministic voter matching: pair equal votes first, the rest in
    // index order
    std::map<std::vector<int>, std::vector<int>> slots;
    for (int j = e2.n() - 1; j >= 0; --j) slots[e2.votes[j].ranking].push_back(j);
    std::vector<int> nu(n, -1);
    std::vector<bool> taken(n, false);
    for (int i = 0; i < n; ++i) {
        auto key = relabel_vote(e1.votes[i], best.candidate_map).ranking;
        auto it = slots.find(key);
        if (it != slots.end() && !it->second.empty()) {
            nu[i] = it->second.back();
            it->second.pop_back();
            taken[nu[i]] = true;
        }
    }
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (nu[i] >= 0) continue;
        while (taken[next]) ++next;
        nu[i] = next;
        taken[next] = true;
    }
    best.voter_map = nu;
    return best;
}

std::vector<std::vector<long long>> wins_matrix(const OrdinalElection& e) {
    return pairwise_matrix(e).wins;
}

double column_distance(const std::vector<double>& a, const std::vector<double>& b,
                       PositionwiseNorm norm) {
    return norm == PositionwiseNorm::EMD ? emd(a, b) : l1(a, b);
}

double positionwise_on_columns(const std::vector<std::vector<double>>& cols1,
                               const std::vector<std::vector<double>>& cols2,
                               PositionwiseNorm norm) {
    int m = static_cast<int>(cols1.size());
    std::vector<std::vector<double>> cost(m, std::vector<double>(m));
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) cost[c][d] = column_distance(cols1[c], cols2[d], norm);
    return solve_assignment(cost).cost;
}

std::vector<std::vector<double>> matrix_columns(const PositionMatrix& p) {
    std::vector<std::vector<double>> cols(p.num_candidates,
                                          std::vector<double>(p.num_candidates));
    for (int c = 0; c < p.num_candidates; ++c)
        for (int i = 0; i < p.num_candidates; ++i)
            cols[c][i] = static_cast<double>(p.counts[i][c]);
    return cols;
}

std::vector<std::vector<double>> matrix_columns(const FrequencyMatrix& f) {
    std::vector<std::vector<double>> cols(f.num_candidates,
                                          std::vector<double>(f.num_candidates));
    for (int c = 0; c < f.num_candidates; ++c)
        for (int i = 0; i < f.num_candidates; ++i) cols[c][i] = f.fractions[i][c];
    return cols;
}

// Head-to-head values in the requested form.
std::vector<std::vector<double>> pairwise_values(const PairwiseMatrix& pm,
                                                 MatrixForm form) {
    int m = pm.num_candidates;
    std::vector<std::vector<double>> v(m, std::vector<double>(m, 0.0));
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
            if (c != d)
                v[c][d] = form == MatrixForm::Counts
                              ? static_cast<double>(pm.wins[c][d])
                              : pm.fraction(c, d);
    return v;
}

// Branch and bound over candidate bijections for the pairwise distance.
// Candidates of E1 are mapped in index order; a node is priced by the exact
// cost over mapped pairs, an assignment bound on the mapped-to-unmapped
// block, and a per-pair minimum over the unmapped block.
//
// Candidates whose swap leaves a matrix unchanged are interchangeable, and
// the cost only depends on how interchange classes map onto each other.
// Forcing class members into index order on both sides keeps one canonical
// bijection per equivalent family, which collapses the search on highly
// symmetric inputs where bound pruning alone cannot cut ties.
class PairwiseSearch {
  public:
    PairwiseSearch(std::vector<std::vector<double>> m1,
                   std::vector<std::vector<double>> m2)
        : m1_(std::move(m1)), m2_(std::move(m2)), m_(static_cast<int>(m1_.size())) {
        min_pair_.assign(m_, std::vector<double>(m_, 0.0));
        for (int c = 0; c < m_; ++c) {
            for (int e = c + 1; e < m_; ++e) {
                double best = 1e300;
                for (int d = 0; d < m_; ++d)
                    for (int f = 0; f < m_; ++f)
                        if (d != f)
                            best = std::min(best, std::abs(m1_[c][e] - m2_[d][f]) +
                                                      std::abs(m1_[e][c] - m2_[f][d]));
                min_pair_[c][e] = best;
            }
        }
        tail_min_.assign(m_ + 1, 0.0);
        for (int t = m_ - 1; t >= 0; --t) {
            tail_min_[t] = tail_min_[t + 1];
            for (int e = t + 1; e < m_; ++e) tail_min_[t] += min_pair_[t][e];
        }
        src_class_ = interchange_classes(m1_);
        tgt_class_ = interchange_classes(m2_);
        // largest earlier source index in the same class, if any
        src_pred_.assign(m_, -1);
        for (int c = m_ - 1; c > 0; --c)
            for (int e = c - 1; e >= 0; --e)
                if (src_class_[e] == src_class_[c]) {
                    src_pred_[c] = e;
                    break;
                }
    }

    double run(std::vector<int>* best_sigma) {
        sigma_.assign(m_, -1);
        used_.assign(m_, false);
        best_ = 1e300;
        dfs(0, 0.0);
        if (best_sigma) *best_sigma = best_map_;
        return best_;
    }

  private:
    static bool swappable(const std::vector<std::vector<double>>& M, int c, int e) {
        if (M[c][e] != M[e][c]) return false;
        for (int x = 0; x < static_cast<int>(M.size()); ++x) {
            if (x == c || x == e) continue;
            if (M[c][x] != M[e][x] || M[x][c] != M[x][e]) return false;
        }
        return true;
    }

    // greedy partition into sets that are pairwise swappable
    static std::vector<int> interchange_classes(const std::vector<std::vector<double>>& M) {
        int m = static_cast<int>(M.size());
        std::vector<int> cls(m, -1);
        std::vector<std::vector<int>> members;
        for (int c = 0; c < m; ++c) {
            for (int k = 0; k < static_cast<int>(members.size()) && cls[c] < 0; ++k) {
                bool fits = true;
                for (int e : members[k])
                    if (!swappable(M, e, c)) {
                        fits = false;
                        break;
                    }
                if (fits) {
                    cls[c] = k;
                    members[k].push_back(c);
                }
            }
            if (cls[c] < 0) {
                cls[c] = static_cast<int>(members.size());
                members.push_back({c});
            }
        }
        return cls;
    }

    void dfs(int t, double g) {
        if (t == m_) {
            if (g < best_ - 1e-12) {
                best_ = g;
                best_map_ = sigma_;
            }
            return;
        }
        for (int d = 0; d < m_; ++d) {
            if (used_[d]) continue;
            if (src_pred_[t] >= 0 && d <= sigma_[src_pred_[t]]) continue;
            bool deferred = false;
            for (int d2 = 0; d2 < d && !deferred; ++d2)
                if (!used_[d2] && tgt_class_[d2] == tgt_class_[d]) deferred = true;
            if (deferred) continue;
            double g2 = g;
            for (int c = 0; c < t; ++c)
                g2 += std::abs(m1_[t][c] - m2_[d][sigma_[c]]) +
                      std::abs(m1_[c][t] - m2_[sigma_[c]][d]);
            if (g2 + lower_bound(t, d) >= best_ - 1e-12) continue;
            sigma_[t] = d;
            used_[d] = true;
            dfs(t + 1, g2);
            used_[d] = false;
            sigma_[t] = -1;
        }
    }

    double lower_bound(int t, int d) const {
        int rest = m_ - t - 1;
        if (rest == 0) return 0.0;
        std::vector<std::vector<double>> r(rest);
        int ri = 0;
        for (int c = t + 1; c < m_; ++c, ++ri) {
            r[ri].reserve(rest);
            for (int col = 0; col < m_; ++col) {
                if (used_[col] || col == d) continue;
                double s = std::abs(m1_[c][t] - m2_[col][d]) +
                           std::abs(m1_[t][c] - m2_[d][col]);
                for (int c2 = 0; c2 < t; ++c2)
                    s += std::abs(m1_[c][c2] - m2_[col][sigma_[c2]]) +
                         std::abs(m1_[c2][c] - m2_[sigma_[c2]][col]);
                r[ri].push_back(s);
            }
        }
        return solve_assignment(r).cost + tail_min_[t + 1];
    }

    std::vector<std::vector<double>> m1_;
    std::vector<std::vector<double>> m2_;
    int m_;
    std::vector<std::vector<double>> min_pair_;
    std::vector<double> tail_min_;
    std::vector<int> src_class_;
    std::vector<int> tgt_class_;
    std::vector<int> src_pred_;
    std::vector<int> sigma_;
    std::vector<bool> used_;
    std::vector<int> best_map_;
    double best_ = 0.0;
};

}  // namespace

long long vote_distance(VoteMetric metric, const PreferenceOrder& u,
                        const PreferenceOrder& v) {
    require(u.size() == v.size(), "votes have different lengths");
    switch (metric) {
        case VoteMetric::Swap: return swap_distance_by_positions(u.positions(), v.positions());
        case VoteMetric::Spearman: {
            auto pu = u.positions(), pv = v.positions();
            long long d = 0;
            for (int c = 0; c < u.size(); ++c) d += std::llabs(pu[c] - pv[c]);
            return d;
        }
        case VoteMetric::Discrete: return u == v ? 0 : 1;
    }
    return 0;
}

IsoDistanceResult iso_distance_full(VoteMetric metric, const OrdinalElection& e1,
                                    const OrdinalElection& e2,
                                    const MatchingConstraint& constraint,
                                    int brute_force_cap) {
    check_same_shape(e1, e2, true);
    int m = e1.m(), n = e1.n();
    if (constraint.candidate_map)
        require(is_permutation_of(*constraint.candidate_map, m),
                "candidate_map is not a bijection over the candidates");
    if (constraint.voter_map)
        require(is_permutation_of(*constraint.voter_map, n),
                "voter_map is not a bijection over the voters");

    IsoDistanceResult result;

    if (constraint.candidate_map && constraint.voter_map) {
        const auto& sigma = *constraint.candidate_map;
        const auto& nu = *constraint.voter_map;
        long long total = 0;
        for (int i = 0; i < n; ++i)
            total += vote_distance(metric, relabel_vote(e1.votes[i], sigma), e2.votes[nu[i]]);
        result.distance = total;
        result.candidate_map = sigma;
        result.voter_map = nu;
        return result;
    }

    if (constraint.candidate_map) {
        auto matching = vote_matching(metric, e1, e2, *constraint.candidate_map);
        result.distance = std::llround(matching.cost);
        result.candidate_map = *constraint.candidate_map;
        result.voter_map = matching.row_to_col;
        return result;
    }

    if (constraint.voter_map) {
        const auto& nu = *constraint.voter_map;
        auto p1 = all_positions(e1), p2 = all_positions(e2);
        if (metric == VoteMetric::Spearman) {
            // displacement splits per candidate, so the best sigma is an
            // assignment over candidate pairs
            std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0.0));
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d)
                    for (int i = 0; i < n; ++i)
                        cost[c][d] += std::abs(p1[i][c] - p2[nu[i]][d]);
            auto sigma = lex_min_optimal_assignment(cost);
            long long total = 0;
            for (int i = 0; i < n; ++i) total += spearman_distance_mapped(p1[i], p2[nu[i]], sigma);
            result.distance = total;
            result.candidate_map = sigma;
            result.voter_map = nu;
            return result;
        }
        if (metric == VoteMetric::Discrete) {
            std::set<std::vector<int>> candidates;
            candidates.insert(identity_order(m).ranking);
            for (int i = 0; i < n; ++i)
                candidates.insert(matching_relabeling(e1.votes[i], e2.votes[nu[i]]));
            result.distance = n + 1;
            for (const auto& sigma : candidates) {
                long long d = 0;
                for (int i = 0; i < n; ++i)
                    if (relabel_vote(e1.votes[i], sigma).ranking != e2.votes[nu[i]].ranking) ++d;
                if (d < result.distance) {
                    result.distance = d;
                    result.candidate_map = sigma;
                }
            }
            result.voter_map = nu;
            return result;
        }
        // swap with pinned voters has no matching shortcut; enumerate
        if (m > brute_force_cap)
            throw BudgetError("iso_distance: candidate search at m=" + std::to_string(m) +
                              " exceeds the brute-force cap " + std::to_string(brute_force_cap));
        std::vector<int> sigma = identity_order(m).ranking;
        result.distance = -1;
        do {
            long long total = 0;
            for (int i = 0; i < n; ++i) total += swap_distance_mapped(p1[i], p2[nu[i]], sigma);
            if (result.distance < 0 || total < result.distance) {
                result.distance = total;
                result.candidate_map = sigma;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        result.voter_map = nu;
        return result;
    }

    if (metric == VoteMetric::Discrete) return discrete_free_search(e1, e2);

    if (m > brute_force_cap)
        throw BudgetError("iso_distance: candidate search at m=" + std::to_string(m) +
                          " exceeds the brute-force cap " + std::to_string(brute_force_cap));
    std::vector<int> sigma = identity_order(m).ranking;
    result.distance = -1;
    do {
        auto matching = vote_matching(metric, e1, e2, sigma);
        long long total = std::llround(matching.cost);
        if (result.distance < 0 || total < result.distance) {
            result.distance = total;
            result.candidate_map = sigma;
            result.voter_map = matching.row_to_col;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return result;
}

long long iso_distance(VoteMetric metric, const OrdinalElection& e1,
                       const OrdinalElection& e2,
                       const MatchingConstraint& constraint, int brute_force_cap) {
    return iso_distance_full(metric, e1, e2, constraint, brute_force_cap).distance;
}

namespace {

// Exact swap search state; see the header note for the bound structure.
//
// High-entropy instances defeat every cheap prefix bound, so the leaf layer
// carries the load there: vote pair costs come from per-candidate "ranked
// above" bitmasks, each leaf assignment starts from a reduction dual bound,
// and the row-by-row solver aborts once its partial optimum reaches the
// incumbent (after each row the solver holds an optimal matching of the
// rows seen so far, a valid lower bound on the full matching).
class SwapSearch {
  public:
    SwapSearch(const OrdinalElection& e1, const OrdinalElection& e2, long long budget)
        : m_(e1.m()), n_(e1.n()), budget_(budget),
          k1_(wins_matrix(e1)), k2_(wins_matrix(e2)),
          p1_(all_positions(e1)), p2_(all_positions(e2)) {
        min_pair_.assign(m_, std::vector<long long>(m_, 0));
        for (int c = 0; c < m_; ++c) {
            for (int e = c + 1; e < m_; ++e) {
                long long best = LLONG_MAX;
                for (int d = 0; d < m_; ++d)
                    for (int f = 0; f < m_; ++f)
                        if (d != f) best = std::min(best, std::llabs(k1_[c][e] - k2_[d][f]));
                min_pair_[c][e] = best;
            }
        }
        tail_min_.assign(m_ + 1, 0);
        for (int t = m_ - 1; t >= 0; --t) {
            tail_min_[t] = tail_min_[t + 1];
            for (int e = t + 1; e < m_; ++e) tail_min_[t] += min_pair_[t][e];
        }
        if (m_ <= 31) {
            above1_.assign(static_cast<size_t>(n_) * m_, 0);
            above2_.assign(static_cast<size_t>(n_) * m_, 0);
            for (int i = 0; i < n_; ++i)
                for (int c = 0; c < m_; ++c)
                    for (int e = 0; e < m_; ++e) {
                        if (p1_[i][e] < p1_[i][c]) above1_[i * m_ + c] |= 1u << e;
                        if (p2_[i][e] < p2_[i][c]) above2_[i * m_ + c] |= 1u << e;
                    }
            mapped1_.assign(above1_.size(), 0);
            gathered2_.assign(above2_.size(), 0);
        }
        if (m_ <= 16) {
            words_ = (m_ + 3) / 4;
            pk1_.assign(static_cast<size_t>(n_) * words_, 0);
            pk2_.assign(static_cast<size_t>(n_) * words_, 0);
        }
        cost_.assign(static_cast<size_t>(n_) * n_, 0);
        rbuf_.assign(static_cast<size_t>(m_) * m_, 0);
        rowmin_.assign(n_, 0);
        ju_.assign(n_ + 1, 0);
        jv_.assign(n_ + 1, 0);
        jp_.assign(n_ + 1, 0);
        jway_.assign(n_ + 1, 0);
        jminv_.assign(n_ + 1, 0);
        jused_.assign(n_ + 1, false);
        ord_.assign(m_, {});
    }

    long long run() {
        seed_incumbent();
        sigma_.assign(m_, -1);
        used_.assign(m_, false);
        dfs(0, 0);
        return best_;
    }

  private:
    static constexpr long long kInf = LLONG_MAX / 4;
    static constexpr int kIntInf = INT_MAX / 4;

    // Per-vote-pair swap costs under sigma, written into cost_, with row
    // minima tracked on the way out.  Masks land in E2 candidate space; a
    // discordant pair shows up in the xor once from each endpoint, hence
    // the final halving.  For small m the per-candidate masks of a vote
    // are packed four to a 64-bit word, so a vote pair costs a handful of
    // xor+popcount steps on contiguous words.
    void build_cost(const std::vector<int>& sigma) {
        if (m_ > 31) {
            for (int i = 0; i < n_; ++i) {
                int rm = INT_MAX;
                for (int j = 0; j < n_; ++j) {
                    int s = static_cast<int>(swap_distance_mapped(p1_[i], p2_[j], sigma));
                    cost_[i * n_ + j] = s;
                    rm = std::min(rm, s);
                }
                rowmin_[i] = rm;
            }
            return;
        }
        if (m_ <= 16) {
            std::fill(pk1_.begin(), pk1_.end(), 0);
            std::fill(pk2_.begin(), pk2_.end(), 0);
            for (int i = 0; i < n_; ++i)
                for (int c = 0; c < m_; ++c) {
                    std::uint32_t x = above1_[i * m_ + c];
                    std::uint64_t y = 0;
                    while (x) {
                        y |= std::uint64_t{1} << sigma[std::countr_zero(x)];
                        x &= x - 1;
                    }
                    pk1_[i * words_ + c / 4] |= y << (16 * (c % 4));
                }
            for (int j = 0; j < n_; ++j)
                for (int c = 0; c < m_; ++c)
                    pk2_[j * words_ + c / 4]
                        |= std::uint64_t{above2_[j * m_ + sigma[c]]} << (16 * (c % 4));
            for (int i = 0; i < n_; ++i) {
                const std::uint64_t* a = &pk1_[i * words_];
                int rm = INT_MAX;
                for (int j = 0; j < n_; ++j) {
                    const std::uint64_t* b = &pk2_[j * words_];
                    int s = 0;
                    for (int w = 0; w < words_; ++w) s += std::popcount(a[w] ^ b[w]);
                    s /= 2;
                    cost_[i * n_ + j] = s;
                    rm = std::min(rm, s);
                }
                rowmin_[i] = rm;
            }
            return;
        }
        for (int i = 0; i < n_; ++i)
            for (int c = 0; c < m_; ++c) {
                std::uint32_t x = above1_[i * m_ + c], y = 0;
                while (x) {
                    y |= 1u << sigma[std::countr_zero(x)];
                    x &= x - 1;
                }
                mapped1_[i * m_ + c] = y;
            }
        for (int j = 0; j < n_; ++j)
            for (int c = 0; c < m_; ++c) gathered2_[j * m_ + c] = above2_[j * m_ + sigma[c]];
        for (int i = 0; i < n_; ++i) {
            const std::uint32_t* a = &mapped1_[i * m_];
            int rm = INT_MAX;
            for (int j = 0; j < n_; ++j) {
                const std::uint32_t* b = &gathered2_[j * m_];
                int s = 0;
                for (int c = 0; c < m_; ++c) s += std::popcount(a[c] ^ b[c]);
                s /= 2;
                cost_[i * n_ + j] = s;
                rm = std::min(rm, s);
            }
            rowmin_[i] = rm;
        }
    }

    // optimal assignment over cost_, abandoned once provably >= bound
    long long assignment_at_most(long long bound) {
        if (n_ == 0) return 0;
        std::fill(ju_.begin(), ju_.end(), 0);
        std::fill(jv_.begin(), jv_.end(), 0);
        std::fill(jp_.begin(), jp_.end(), 0);
        for (int i = 1; i <= n_; ++i) {
            jp_[0] = i;
            int j0 = 0;
            std::fill(jminv_.begin(), jminv_.end(), kIntInf);
            std::fill(jused_.begin(), jused_.end(), false);
            do {
                jused_[j0] = true;
                int i0 = jp_[j0], j1 = 0;
                int delta = kIntInf;
                const int* row = &cost_[(i0 - 1) * n_];
                const int u0 = ju_[i0];
                for (int j = 1; j <= n_; ++j) {
                    if (jused_[j]) continue;
                    int cur = row[j - 1] - u0 - jv_[j];
                    if (cur < jminv_[j]) {
                        jminv_[j] = cur;
                        jway_[j] = j0;
                    }
                    if (jminv_[j] < delta) {
                        delta = jminv_[j];
                        j1 = j;
                    }
                }
                for (int j = 0; j <= n_; ++j) {
                    if (jused_[j]) {
                        ju_[jp_[j]] += delta;
                        jv_[j] -= delta;
                    } else {
                        jminv_[j] -= delta;
                    }
                }
                j0 = j1;
            } while (jp_[j0] != 0);
            do {
                int j1 = jway_[j0];
                jp_[j0] = jp_[j1];
                j0 = j1;
            } while (j0);
            if (-jv_[0] >= bound) return bound;
        }
        return -jv_[0];
    }

    long long exact_cost(const std::vector<int>& sigma, long long bound) {
        build_cost(sigma);
        long long lb = 0;
        for (int i = 0; i < n_; ++i) lb += rowmin_[i];
        for (int j = 0; j < n_; ++j) {
            long long cs = kInf;
            for (int i = 0; i < n_; ++i)
                cs = std::min(cs, static_cast<long long>(cost_[i * n_ + j] - rowmin_[i]));
            lb += cs;
        }
        if (lb >= bound) return bound;
        return assignment_at_most(bound);
    }

    // Incumbent: positionwise column matching gives the starting bijection,
    // then transposition descent; aborted pricing keeps failed moves cheap.
    void seed_incumbent() {
        std::vector<std::vector<double>> cols1(m_, std::vector<double>(m_, 0.0));
        std::vector<std::vector<double>> cols2 = cols1;
        for (int i = 0; i < n_; ++i)
            for (int c = 0; c < m_; ++c) {
                cols1[c][p1_[i][c]] += 1.0;
                cols2[c][p2_[i][c]] += 1.0;
            }
        std::vector<std::vector<double>> cost(m_, std::vector<double>(m_));
        for (int c = 0; c < m_; ++c)
            for (int d = 0; d < m_; ++d) cost[c][d] = emd(cols1[c], cols2[d]);
        auto sigma = solve_assignment(cost).row_to_col;
        best_ = exact_cost(sigma, kInf);

        bool improved = true;
        int evals = 0;
        while (improved && evals < 600) {
            improved = false;
            for (int a = 0; a < m_; ++a)
                for (int b = a + 1; b < m_ && evals < 600; ++b) {
                    std::swap(sigma[a], sigma[b]);
                    ++evals;
                    long long v = exact_cost(sigma, best_);
                    if (v < best_) {
                        best_ = v;
                        improved = true;
                    } else {
                        std::swap(sigma[a], sigma[b]);
                    }
                }
        }
    }

    void dfs(int t, long long g) {
        if (t == m_) {
            long long v = exact_cost(sigma_, best_);
            if (v < best_) best_ = v;
            return;
        }
        auto& ord = ord_[t];
        ord.clear();
        for (int d = 0; d < m_; ++d) {
            if (used_[d]) continue;
            long long inc = 0;
            for (int c = 0; c < t; ++c) inc += std::llabs(k1_[t][c] - k2_[d][sigma_[c]]);
            ord.push_back({inc, d});
        }
        std::sort(ord.begin(), ord.end());
        for (auto [inc, d] : ord) {
            if (++nodes_ > budget_)
                throw BudgetError("iso_swap_distance: node budget exhausted");
            long long g2 = g + inc;
            if (g2 + tail_min_[t + 1] >= best_) continue;
            if (t + 1 < m_ && !admissible(t, d, g2)) continue;
            sigma_[t] = d;
            used_[d] = true;
            dfs(t + 1, g2);
            used_[d] = false;
            sigma_[t] = -1;
        }
    }

    // Prefix bound over the unmapped block.  Row minima prune on their own
    // when possible; the assignment solve only runs when they land close
    // enough to the incumbent that its extra tightness could tip the node.
    bool admissible(int t, int d, long long g2) {
        int rest = m_ - t - 1;
        long long base = g2 + tail_min_[t + 1];
        long long rowminsum = 0;
        for (int c = t + 1, ri = 0; c < m_; ++c, ++ri) {
            long long rmin = kInf;
            int ci = 0;
            for (int col = 0; col < m_; ++col) {
                if (used_[col] || col == d) continue;
                long long s = std::llabs(k1_[c][t] - k2_[col][d]);
                for (int c2 = 0; c2 < t; ++c2)
                    s += std::llabs(k1_[c][c2] - k2_[col][sigma_[c2]]);
                rbuf_[ri * rest + ci] = s;
                rmin = std::min(rmin, s);
                ++ci;
            }
            rowminsum += rmin;
        }
        if (base + rowminsum >= best_) return false;
        if (base + rowminsum + rowminsum / 4 < best_) return true;
        std::vector<std::vector<double>> r(rest, std::vector<double>(rest));
        for (int a = 0; a < rest; ++a)
            for (int b = 0; b < rest; ++b) r[a][b] = static_cast<double>(rbuf_[a * rest + b]);
        return base + std::llround(solve_assignment(r).cost) < best_;
    }

    int m_, n_;
    long long budget_;
    long long nodes_ = 0;
    long long best_ = LLONG_MAX;
    std::vector<std::vector<long long>> k1_, k2_;
    std::vector<std::vector<int>> p1_, p2_;
    std::vector<std::vector<long long>> min_pair_;
    std::vector<long long> tail_min_;
    std::vector<std::uint32_t> above1_, above2_, mapped1_, gathered2_;
    std::vector<std::uint64_t> pk1_, pk2_;
    int words_ = 0;
    std::vector<int> cost_;
    std::vector<long long> rbuf_;
    std::vector<int> rowmin_;
    std::vector<int> ju_, jv_, jminv_;
    std::vector<int> jp_, jway_;
    std::vector<char> jused_;
    std::vector<std::vector<std::pair<long long, int>>> ord_;
    std::vector<int> sigma_;
    std::vector<bool> used_;
};

}  // namespace

long long iso_swap_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                            long long node_budget) {
    check_same_shape(e1, e2, true);
    if (e1.m() <= 1) return 0;
    SwapSearch search(e1, e2, node_budget);
    return search.run();
}

double positionwise_distance(const PositionMatrix& p1, const PositionMatrix& p2,
                             PositionwiseNorm norm) {
    require(p1.num_candidates == p2.num_candidates, "position matrices differ in size");
    require(p1.num_voters == p2.num_voters,
            "counts-form positionwise distance needs equal numbers of voters");
    return positionwise_on_columns(matrix_columns(p1), matrix_columns(p2), norm);
}

double positionwise_distance(const FrequencyMatrix& f1, const FrequencyMatrix& f2,
                             PositionwiseNorm norm) {
    require(f1.num_candidates == f2.num_candidates, "frequency matrices differ in size");
    return positionwise_on_columns(matrix_columns(f1), matrix_columns(f2), norm);
}

double positionwise_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                             PositionwiseNorm norm, MatrixForm form) {
    check_same_shape(e1, e2, form == MatrixForm::Counts);
    if (form == MatrixForm::Counts)
        return positionwise_distance(position_matrix(e1), position_matrix(e2), norm);
    return positionwise_distance(frequency_matrix(e1), frequency_matrix(e2), norm);
}

double pairwise_distance(const PairwiseMatrix& m1, const PairwiseMatrix& m2,
                         MatrixForm form, int cap) {
    require(m1.num_candidates == m2.num_candidates, "pairwise matrices differ in size");
    if (form == MatrixForm::Counts)
        require(m1.num_voters == m2.num_voters,
                "counts-form pairwise distance needs equal numbers of voters");
    if (m1.num_candidates > cap)
        throw BudgetError("pairwise_distance: m=" + std::to_string(m1.num_candidates) +
                          " exceeds the search cap " + std::to_string(cap));
    PairwiseSearch search(pairwise_values(m1, form), pairwise_values(m2, form));
    return search.run(nullptr);
}

double pairwise_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                         MatrixForm form, int cap) {
    check_same_shape(e1, e2, form == MatrixForm::Counts);
    return pairwise_distance(pairwise_matrix(e1), pairwise_matrix(e2), form, cap);
}

double bordawise_distance(const OrdinalElection& e1, const OrdinalElection& e2,
                          MatrixForm form) {
    check_same_shape(e1, e2, form == MatrixForm::Counts);
    auto b1 = borda_vector(e1).scores, b2 = borda_vector(e2).scores;
    std::vector<double> x(b1.begin(), b1.end()), y(b2.begin(), b2.end());
    std::sort(x.rbegin(), x.rend());
    std::sort(y.rbegin(), y.rend());
    if (form == MatrixForm::Frequency) {
        for (auto& v : x) v /= e1.n();
        for (auto& v : y) v /= e2.n();
    }
    return emd(x, y);
}

DistanceMatrix distance_matrix(const std::vector<OrdinalElection>& dataset,
                               ElectionMetric metric, const MetricOptions& options,
                               const std::vector<std::string>& labels) {
    int k = static_cast<int>(dataset.size());
    require(labels.empty() || static_cast<int>(labels.size()) == k,
            "label count does not match the dataset");
    DistanceMatrix dm;
    dm.labels.reserve(k);
    for (int i = 0; i < k; ++i)
        dm.labels.push_back(labels.empty() ? std::to_string(i) : labels[i]);
    dm.d.assign(k, std::vector<double>(k, 0.0));

    auto one = [&](const OrdinalElection& a, const OrdinalElection& b) -> double {
        switch (metric) {
            case ElectionMetric::Swap:
                if (options.swap_node_budget > 0)
                    return static_cast<double>(iso_swap_distance(a, b, options.swap_node_budget));
                return static_cast<double>(iso_distance(VoteMetric::Swap, a, b, {},
                                                        options.brute_force_cap));
            case ElectionMetric::Spearman:
                return static_cast<double>(iso_distance(VoteMetric::Spearman, a, b, {},
                                                        options.brute_force_cap));
            case ElectionMetric::Discrete:
                return static_cast<double>(iso_distance(VoteMetric::Discrete, a, b));
            case ElectionMetric::EmdPositionwise:
                return positionwise_distance(a, b, PositionwiseNorm::EMD, options.form);
            case ElectionMetric::L1Positionwise:
                return positionwise_distance(a, b, PositionwiseNorm::L1, options.form);
            case ElectionMetric::Pairwise:
                return pairwise_distance(a, b, options.form, options.pairwise_cap);
            case ElectionMetric::Bordawise:
                return bordawise_distance(a, b, options.form);
        }
        return 0.0;
    };

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) dm.d[i][j] = dm.d[j][i] = one(dataset[i], dataset[j]);
    return dm;
}

double normalize_distance(double value, ElectionMetric metric, int m, long long n,
                          MatrixForm form) {
    require(m >= 2, "normalization needs at least two candidates");
    double md = m;
    double scale = 1.0;
    if (form == MatrixForm::Counts || metric == ElectionMetric::Swap ||
        metric == ElectionMetric::Discrete) {
        require(n > 0, "count-form normalization needs the number of voters");
        scale = static_cast<double>(n);
    }
    double diameter = 0.0;
    switch (metric) {
        case ElectionMetric::Swap: diameter = scale * md * (md - 1.0) / 4.0; break;
        case ElectionMetric::Spearman:
            throw std::invalid_argument("normalize_distance: no closed-form diameter for Spearman");
        case ElectionMetric::Discrete: {
            long double inv_mf = 1.0L;
            for (int i = 2; i <= m && inv_mf > 1e-30L; ++i) inv_mf /= i;
            diameter = scale * static_cast<double>(1.0L - inv_mf);
            break;
        }
        case ElectionMetric::EmdPositionwise: diameter = scale * (md * md - 1.0) / 3.0; break;
        case ElectionMetric::L1Positionwise: diameter = scale * 2.0 * (md - 1.0); break;
        case ElectionMetric::Pairwise: diameter = scale * md * (md - 1.0) / 2.0; break;
        case ElectionMetric::Bordawise: diameter = scale * md * (md * md - 1.0) / 12.0; break;
    }
    return value / diameter;
}

namespace {

std::vector<std::vector<int>> all_orders(int m) {
    std::vector<std::vector<int>> orders;
    std::vector<int> v = identity_order(m).ranking;
    do orders.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return orders;
}

std::vector<std::vector<int>> all_sigmas(int m) { return all_orders(m); }

// Flat integer key identifying the election's class under the relation.
std::vector<int> class_key(const std::vector<const std::vector<int>*>& votes, int m,
                           EquivalenceRelation relation,
                           const std::vector<std::vector<int>>& sigmas) {
    int n = static_cast<int>(votes.size());
    switch (relation) {
        case EquivalenceRelation::ANEC: {
            std::vector<int> best;
            for (const auto& sigma : sigmas) {
                std::vector<std::vector<int>> relabeled(n);
                for (int i = 0; i < n; ++i) {
                    relabeled[i].reserve(m);
                    for (int c : *votes[i]) relabeled[i].push_back(sigma[c]);
                }
                std::sort(relabeled.begin(), relabeled.end());
                std::vector<int> key;
                key.reserve(n * m);
                for (const auto& v : relabeled) key.insert(key.end(), v.begin(), v.end());
                if (best.empty() || key < best) best = std::move(key);
            }
            return best;
        }
        case EquivalenceRelation::Positionwise: {
            // zero distance = identical column multisets, so sort columns
            std::vector<std::vector<int>> cols(m, std::vector<int>(m, 0));
            for (const auto* v : votes)
                for (int pos = 0; pos < m; ++pos) ++cols[(*v)[pos]][pos];
            std::sort(cols.begin(), cols.end());
            std::vector<int> key;
            key.reserve(m * m);
            for (const auto& c : cols) key.insert(key.end(), c.begin(), c.end());
            return key;
        }
        case EquivalenceRelation::Pairwise: {
            std::vector<std::vector<int>> wins(m, std::vector<int>(m, 0));
            for (const auto* v : votes)
                for (int a = 0; a < m; ++a)
                    for (int b = a + 1; b < m; ++b) ++wins[(*v)[a]][(*v)[b]];
            std::vector<int> best;
            for (const auto& sigma : sigmas) {
                std::vector<int> key;
                key.reserve(m * m);
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d) {
                        int sc = sigma[c], sd = sigma[d];
                        key.push_back(c == d ? 0 : wins[sc][sd]);
                    }
                if (best.empty() || key < best) best = std::move(key);
            }
            return best;
        }
        case EquivalenceRelation::Bordawise: {
            std::vector<int> scores(m, 0);
            for (const auto* v : votes)
                for (int pos = 0; pos < m; ++pos) scores[(*v)[pos]] += m - 1 - pos;
            std::sort(scores.rbegin(), scores.rend());
            return scores;
        }
    }
    return {};
}

}  // namespace

long long count_equivalence_classes(int m, int n, EquivalenceRelation relation) {
    if (m > 4 || n > 5 || m < 1 || n < 1)
        throw BudgetError("count_equivalence_classes: only m <= 4, n <= 5 is enumerable");
    auto orders = all_orders(m);
    auto sigmas = all_sigmas(m);
    std::set<std::vector<int>> classes;

    // enumerate vote multisets as nondecreasing index sequences
    std::vector<int> pick(n, 0);
    std::vector<const std::vector<int>*> votes(n);
    while (true) {
        for (int i = 0; i < n; ++i) votes[i] = &orders[pick[i]];
        classes.insert(class_key(votes, m, relation, sigmas));
        int i = n - 1;
        while (i >= 0 && pick[i] == static_cast<int>(orders.size()) - 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[i];
    }
    return static_cast<long long>(classes.size());
}

}  // namespace votemap
