#include "votemap/core.hpp"

#include <algorithm>
#include <cmath>

namespace votemap {

PositionMatrix position_matrix(const OrdinalElection& e) {
    check_valid(e);
    PositionMatrix p;
    p.num_candidates = e.m();
    p.num_voters = e.n();
    p.counts.assign(e.m(), std::vector<long long>(e.m(), 0));
    for (const auto& v : e.votes)
        for (int i = 0; i < e.m(); ++i) p.counts[i][v.ranking[i]] += 1;
    return p;
}

FrequencyMatrix frequency_matrix(const OrdinalElection& e) {
    PositionMatrix p = position_matrix(e);
    FrequencyMatrix f;
    f.num_candidates = p.num_candidates;
    f.fractions.assign(p.num_candidates, std::vector<double>(p.num_candidates));
    for (int i = 0; i < p.num_candidates; ++i)
        for (int c = 0; c < p.num_candidates; ++c)
            f.fractions[i][c] = static_cast<double>(p.counts[i][c]) / p.num_voters;
    return f;
}

PairwiseMatrix pairwise_matrix(const OrdinalElection& e) {
    check_valid(e);
    PairwiseMatrix w;
    w.num_candidates = e.m();
    w.num_voters = e.n();
    w.wins.assign(e.m(), std::vector<long long>(e.m(), 0));
    for (const auto& v : e.votes)
        for (int i = 0; i < e.m(); ++i)
            for (int j = i + 1; j < e.m(); ++j) w.wins[v.ranking[i]][v.ranking[j]] += 1;
    return w;
}

BordaVector borda_vector(const OrdinalElection& e) {
    check_valid(e);
    BordaVector b;
    b.scores.assign(e.m(), 0);
    for (const auto& v : e.votes)
        for (int i = 0; i < e.m(); ++i) b.scores[v.ranking[i]] += e.m() - 1 - i;
    return b;
}

double emd(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("emd: length mismatch");
    double sx = 0.0, sy = 0.0;
    for (double v : x) {
        if (v < 0) throw std::invalid_argument("emd: negative entry");
        sx += v;
    }
    for (double v : y) {
        if (v < 0) throw std::invalid_argument("emd: negative entry");
        sy += v;
    }
    if (std::fabs(sx - sy) > 1e-9) throw std::invalid_argument("emd: sums differ");
    double total = 0.0, carry = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        carry += x[i] - y[i];
        total += std::fabs(carry);
    }
    return total;
}

double l1(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("l1: length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) total += std::fabs(x[i] - y[i]);
    return total;
}

double pcc(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("pcc: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pcc: need at least two samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("pcc: undefined for zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Perfect matching of positions to candidates on the support of the
// remaining counts (Kuhn's augmenting paths).  Always exists for a matrix
// with equal positive row and column sums, by Hall's theorem.
bool try_augment(int row, const std::vector<std::vector<long long>>& counts,
                 std::vector<char>& visited, std::vector<int>& col_owner) {
    const int m = static_cast<int>(counts.size());
    for (int c = 0; c < m; ++c) {
        if (counts[row][c] <= 0 || visited[c]) continue;
        visited[c] = 1;
        if (col_owner[c] < 0 || try_augment(col_owner[c], counts, visited, col_owner)) {
            col_owner[c] = row;
            return true;
        }
    }
    return false;
}

}  // namespace

OrdinalElection realize_from_position_matrix(const PositionMatrix& p) {
    const int m = p.num_candidates;
    if (m < 1 || static_cast<int>(p.counts.size()) != m)
        throw std::invalid_argument("realize: malformed matrix");
    for (int i = 0; i < m; ++i) {
        long long row = 0, col = 0;
        for (int j = 0; j < m; ++j) {
            if (p.counts[i][j] < 0) throw std::invalid_argument("realize: negative count");
            row += p.counts[i][j];
            col += p.counts[j][i];
        }
        if (row != p.num_voters || col != p.num_voters)
            throw std::invalid_argument("realize: rows/columns must each sum to n");
    }

    auto remaining = p.counts;
    long long mass = p.num_voters;
    OrdinalElection e;
    e.num_candidates = m;
    while (mass > 0) {
        std::vector<int> col_owner(m, -1);
        for (int row = 0; row < m; ++row) {
            std::vector<char> visited(m, 0);
            if (!try_augment(row, remaining, visited, col_owner))
                throw std::invalid_argument("realize: support has no perfect matching");
        }
        std::vector<int> row_to_col(m);
        for (int c = 0; c < m; ++c) row_to_col[col_owner[c]] = c;
        long long weight = remaining[0][row_to_col[0]];
        for (int i = 1; i < m; ++i) weight = std::min(weight, remaining[i][row_to_col[i]]);
        PreferenceOrder v;
        v.ranking = row_to_col;
        for (long long k = 0; k < weight; ++k) e.votes.push_back(v);
        for (int i = 0; i < m; ++i) remaining[i][row_to_col[i]] -= weight;
        mass -= weight;
    }
    return e;
}

PreferenceOrder relabel_vote(const PreferenceOrder& v, const std::vector<int>& sigma) {
    PreferenceOrder r = v;
    for (auto& c : r.ranking) c = sigma[c];
    return r;
}

std::vector<int> matching_relabeling(const PreferenceOrder& v, const PreferenceOrder& u) {
    std::vector<int> sigma(v.size());
    for (int p = 0; p < v.size(); ++p) sigma[v.ranking[p]] = u.ranking[p];
    return sigma;
}

}  // namespace votemap
