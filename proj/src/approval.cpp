#include "votemap/approval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "votemap/assignment.hpp"
#include "votemap/cultures.hpp"

namespace votemap {

namespace {

void check_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string("sample_approval: ") + name +
                                    " must lie in [0, 1]");
}

// floor(p * m) with a guard against 0.3 * 10 = 2.999... style rounding.
int central_size(double p, int m) {
    return static_cast<int>(std::floor(p * m + 1e-9));
}

ApprovalBallot default_central(const ApprovalCultureSpec& spec, int m) {
    if (spec.central) {
        const auto& c = spec.central->approved;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= m || (i > 0 && c[i] <= c[i - 1]))
                throw std::invalid_argument(
                    "sample_approval: central ballot must be sorted and in range");
        }
        return *spec.central;
    }
    ApprovalBallot u;
    for (int c = 0; c < central_size(spec.p, m); ++c) u.approved.push_back(c);
    return u;
}

// One resampling draw: each candidate keeps the central verdict with
// probability 1-phi and is otherwise approved with probability p.
ApprovalBallot resample_from(const std::vector<char>& central, double p, double phi,
                             int m, Rng& rng) {
    ApprovalBallot v;
    for (int c = 0; c < m; ++c) {
        bool approved = rng.next_double() < phi ? rng.next_double() < p
                                                : static_cast<bool>(central[c]);
        if (approved) v.approved.push_back(c);
    }
    return v;
}

std::vector<char> as_flags(const ApprovalBallot& ballot, int m) {
    std::vector<char> flags(m, 0);
    for (int c : ballot.approved) flags[c] = 1;
    return flags;
}

double log_choose(int a, int b) {
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

// Draws one ballot at distance-weighted random from the central one.  Votes
// at equal (kept, added) counts are interchangeable, so the distribution
// factors into a small 2D table over x = |kept central approvals| and
// y = |added outside approvals| with weight C(z,x) C(m-z,y) phi^dist,
// normalized in log-space.
ApprovalBallot noise_ballot(const ApprovalBallot& central, double phi,
                            ApprovalMetric metric, int m, Rng& rng) {
    const int z = static_cast<int>(central.approved.size());
    std::vector<double> log_weight;
    std::vector<std::pair<int, int>> cells;
    for (int x = 0; x <= z; ++x) {
        for (int y = 0; y <= m - z; ++y) {
            double dist = static_cast<double>(z - x + y);
            if (metric == ApprovalMetric::Jaccard)
                dist = z + y > 0 ? dist / (z + y) : 0.0;
            if (phi == 0.0 && dist > 0.0) continue;
            double lw = log_choose(z, x) + log_choose(m - z, y);
            if (dist > 0.0) lw += dist * std::log(phi);
            cells.emplace_back(x, y);
            log_weight.push_back(lw);
        }
    }
    const double peak = *std::max_element(log_weight.begin(), log_weight.end());
    std::vector<double> cumulative(log_weight.size());
    double total = 0.0;
    for (std::size_t i = 0; i < log_weight.size(); ++i) {
        total += std::exp(log_weight[i] - peak);
        cumulative[i] = total;
    }
    const double draw = rng.next_double() * total;
    std::size_t pick = 0;
    while (pick + 1 < cumulative.size() && cumulative[pick] < draw) ++pick;
    const auto [x, y] = cells[pick];

    // x uniformly random kept central members plus y added outsiders
    std::vector<int> inside = central.approved;
    std::vector<int> outside;
    const auto flags = as_flags(central, m);
    for (int c = 0; c < m; ++c)
        if (!flags[c]) outside.push_back(c);
    rng.shuffle(inside);
    rng.shuffle(outside);
    ApprovalBallot v;
    v.approved.assign(inside.begin(), inside.begin() + x);
    v.approved.insert(v.approved.end(), outside.begin(), outside.begin() + y);
    std::sort(v.approved.begin(), v.approved.end());
    return v;
}

ApprovalElection euclidean_approval(int dimension, double radius, int m, int n,
                                    Rng& rng) {
    std::vector<std::vector<double>> candidate(m, std::vector<double>(dimension));
    for (auto& point : candidate)
        for (double& coord : point) coord = rng.next_double();
    ApprovalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    std::vector<double> voter(dimension);
    for (int i = 0; i < n; ++i) {
        for (double& coord : voter) coord = rng.next_double();
        ApprovalBallot v;
        for (int c = 0; c < m; ++c) {
            double dist2 = 0.0;
            for (int a = 0; a < dimension; ++a) {
                const double diff = voter[a] - candidate[c][a];
                dist2 += diff * diff;
            }
            if (dist2 <= radius * radius) v.approved.push_back(c);
        }
        e.votes.push_back(std::move(v));
    }
    return e;
}

}  // namespace

ApprovalCultureSpec ApprovalCultureSpec::pic(double p) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::PIC;
    s.p = p;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::pid(double p) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::PID;
    s.p = p;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::resampling(double p, double phi) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::Resampling;
    s.p = p;
    s.phi = phi;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::disjoint(double p, double phi, int groups) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::Disjoint;
    s.p = p;
    s.phi = phi;
    s.groups = groups;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::moving(double p, double phi, int groups) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::Moving;
    s.p = p;
    s.phi = phi;
    s.groups = groups;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::noise(double p, double phi,
                                               ApprovalMetric metric) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::Noise;
    s.p = p;
    s.phi = phi;
    s.noise_metric = metric;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::euclidean_1d(double radius) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::Euclidean1D;
    s.radius = radius;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::euclidean_2d(double radius) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::Euclidean2D;
    s.radius = radius;
    return s;
}

ApprovalCultureSpec ApprovalCultureSpec::truncated_urn(double p, double alpha) {
    ApprovalCultureSpec s;
    s.kind = ApprovalCultureKind::TruncatedUrn;
    s.p = p;
    s.alpha = alpha;
    return s;
}

ApprovalElection sample_approval(const ApprovalCultureSpec& spec, int m, int n,
                                 Rng& rng) {
    if (m < 1) throw std::invalid_argument("sample_approval: need m >= 1");
    if (n < 0) throw std::invalid_argument("sample_approval: need n >= 0");
    check_unit(spec.p, "p");
    check_unit(spec.phi, "phi");

    ApprovalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);

    switch (spec.kind) {
        case ApprovalCultureKind::PIC: {
            for (int i = 0; i < n; ++i) {
                ApprovalBallot v;
                for (int c = 0; c < m; ++c)
                    if (rng.next_double() < spec.p) v.approved.push_back(c);
                e.votes.push_back(std::move(v));
            }
            break;
        }
        case ApprovalCultureKind::PID: {
            const ApprovalBallot u = default_central(spec, m);
            e.votes.assign(n, u);
            break;
        }
        case ApprovalCultureKind::Resampling: {
            const auto central = as_flags(default_central(spec, m), m);
            for (int i = 0; i < n; ++i)
                e.votes.push_back(resample_from(central, spec.p, spec.phi, m, rng));
            break;
        }
        case ApprovalCultureKind::Disjoint: {
            if (spec.groups < 1)
                throw std::invalid_argument("sample_approval: need groups >= 1");
            if (spec.p * spec.groups > 1.0 + 1e-9)
                throw std::invalid_argument(
                    "sample_approval: disjoint model needs p * groups <= 1");
            const int z = central_size(spec.p, m);
            std::vector<std::vector<char>> centrals(spec.groups,
                                                    std::vector<char>(m, 0));
            for (int g = 0; g < spec.groups; ++g)
                for (int c = g * z; c < (g + 1) * z; ++c) centrals[g][c] = 1;
            for (int i = 0; i < n; ++i) {
                const int g = rng.next_int(spec.groups);
                e.votes.push_back(resample_from(centrals[g], spec.p, spec.phi, m, rng));
            }
            break;
        }
        case ApprovalCultureKind::Moving: {
            if (spec.groups < 1)
                throw std::invalid_argument("sample_approval: need groups >= 1");
            const auto original = as_flags(default_central(spec, m), m);
            auto central = original;
            const int block = n > 0 ? std::max(1, n / spec.groups) : 1;
            for (int i = 0; i < n; ++i) {
                ApprovalBallot v = resample_from(central, spec.p, spec.phi, m, rng);
                central = as_flags(v, m);
                e.votes.push_back(std::move(v));
                if ((i + 1) % block == 0) central = original;
            }
            break;
        }
        case ApprovalCultureKind::Noise: {
            const ApprovalBallot u = default_central(spec, m);
            for (int i = 0; i < n; ++i)
                e.votes.push_back(noise_ballot(u, spec.phi, spec.noise_metric, m, rng));
            break;
        }
        case ApprovalCultureKind::Euclidean1D:
        case ApprovalCultureKind::Euclidean2D: {
            if (!(spec.radius > 0.0))
                throw std::invalid_argument("sample_approval: need radius > 0");
            const int dim = spec.kind == ApprovalCultureKind::Euclidean1D ? 1 : 2;
            e = euclidean_approval(dim, spec.radius, m, n, rng);
            break;
        }
        case ApprovalCultureKind::TruncatedUrn: {
            const int top = static_cast<int>(std::ceil(spec.p * m - 1e-9));
            const OrdinalElection ranks =
                sample_election(CultureSpec::urn(spec.alpha), m, n, rng);
            for (const auto& vote : ranks.votes) {
                ApprovalBallot v;
                v.approved.assign(vote.ranking.begin(), vote.ranking.begin() + top);
                std::sort(v.approved.begin(), v.approved.end());
                e.votes.push_back(std::move(v));
            }
            break;
        }
    }
    return e;
}

double approval_vote_distance(ApprovalMetric metric, const ApprovalBallot& u,
                              const ApprovalBallot& v) {
    std::size_t i = 0, j = 0;
    int common = 0;
    while (i < u.approved.size() && j < v.approved.size()) {
        if (u.approved[i] == v.approved[j]) {
            ++common;
            ++i;
            ++j;
        } else if (u.approved[i] < v.approved[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const int hamming =
        static_cast<int>(u.approved.size() + v.approved.size()) - 2 * common;
    if (metric == ApprovalMetric::Hamming) return hamming;
    const int unioned =
        static_cast<int>(u.approved.size() + v.approved.size()) - common;
    return unioned > 0 ? static_cast<double>(hamming) / unioned : 0.0;
}

ApprovalwiseVector approvalwise_vector(const ApprovalElection& e) {
    check_valid(e);
    ApprovalwiseVector av;
    av.values.assign(e.m(), 0.0);
    if (e.n() == 0) return av;
    for (const auto& v : e.votes)
        for (int c : v.approved) av.values[c] += 1.0;
    for (double& x : av.values) x /= e.n();
    std::sort(av.values.begin(), av.values.end(), std::greater<double>());
    return av;
}

double approvalwise_distance(const ApprovalwiseVector& x, const ApprovalwiseVector& y) {
    if (x.values.size() != y.values.size())
        throw std::invalid_argument("approvalwise_distance: vector lengths differ");
    double total = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        total += std::abs(x.values[i] - y.values[i]);
    return total;
}

double approvalwise_distance(const ApprovalElection& e, const ApprovalElection& f) {
    return approvalwise_distance(approvalwise_vector(e), approvalwise_vector(f));
}

ApprovalwiseVector GridPoint::analytic_vector(int m) const {
    if (m < 1) throw std::invalid_argument("GridPoint: need m >= 1");
    ApprovalwiseVector av;
    av.values.assign(m, phi * p);
    for (int c = 0; c < central_size(p, m); ++c) av.values[c] = (1.0 - phi) + phi * p;
    return av;
}

double grid_distance(double p1, double phi1, double p2, double phi2, int m) {
    return approvalwise_distance(GridPoint{p1, phi1}.analytic_vector(m),
                                 GridPoint{p2, phi2}.analytic_vector(m));
}

namespace {

// Exact search over candidate bijections sigma with branch and bound.  The
// per-voter Hamming cost splits over candidates, so a partially built sigma
// already fixes part of the voter-matching cost matrix; an assignment bound
// on that part plus approval-score gaps for the unassigned candidates prunes
// most of the bijection tree.
class HammingSearch {
  public:
    HammingSearch(const ApprovalElection& e, const ApprovalElection& f)
        : m_(e.m()), n_(e.n()) {
        cols_e_.assign(m_, std::vector<char>(n_, 0));
        cols_f_.assign(m_, std::vector<char>(n_, 0));
        for (int i = 0; i < n_; ++i)
            for (int c : e.votes[i].approved) cols_e_[c][i] = 1;
        for (int j = 0; j < n_; ++j)
            for (int c : f.votes[j].approved) cols_f_[c][j] = 1;
        count_e_.assign(m_, 0);
        count_f_.assign(m_, 0);
        for (int c = 0; c < m_; ++c) {
            for (int i = 0; i < n_; ++i) count_e_[c] += cols_e_[c][i];
            for (int j = 0; j < n_; ++j) count_f_[c] += cols_f_[c][j];
        }

        // process distinctive source candidates first
        order_.resize(m_);
        for (int c = 0; c < m_; ++c) order_[c] = c;
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (count_e_[a] != count_e_[b]) return count_e_[a] > count_e_[b];
            return a < b;
        });

        // interchangeable target candidates (identical approver sets) only
        // need one representative per tree node
        std::map<std::vector<char>, int> keys;
        col_key_.resize(m_);
        for (int c = 0; c < m_; ++c)
            col_key_[c] = keys.emplace(cols_f_[c], static_cast<int>(keys.size()))
                              .first->second;

        partial_.assign(n_, std::vector<int>(n_, 0));
        used_.assign(m_, 0);
        best_ = static_cast<long long>(m_) * n_ + 1;
    }

    long long run() {
        dfs(0);
        return best_;
    }

  private:
    // Relaxed matching bound: every voter of e picks its cheapest partner
    // independently.
    long long row_minimum_bound() const {
        long long total = 0;
        for (int i = 0; i < n_; ++i)
            total += *std::min_element(partial_[i].begin(), partial_[i].end());
        return total;
    }

    long long hungarian_bound() const {
        std::vector<std::vector<double>> cost(n_, std::vector<double>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) cost[i][j] = partial_[i][j];
        return std::llround(solve_assignment(cost).cost);
    }

    // Best-case cost of the unassigned candidates: each pairing of a free
    // source candidate with a free target differs on at least the gap
    // between their approval counts, whoever the matched voters are.
    long long tail_bound(int depth) const {
        if (depth == m_) return 0;
        std::vector<int> free_f;
        for (int c = 0; c < m_; ++c)
            if (!used_[c]) free_f.push_back(c);
        const int r = static_cast<int>(free_f.size());
        std::vector<std::vector<double>> gap(r, std::vector<double>(r));
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                gap[a][b] = std::abs(count_e_[order_[depth + a]] - count_f_[free_f[b]]);
        return std::llround(solve_assignment(gap).cost);
    }

    void apply(int d, int c, int sign) {
        const auto& a = cols_e_[d];
        const auto& b = cols_f_[c];
        for (int i = 0; i < n_; ++i) {
            auto& row = partial_[i];
            const char ai = a[i];
            for (int j = 0; j < n_; ++j) row[j] += sign * (ai ^ b[j]);
        }
    }

    void dfs(int depth) {
        if (depth == m_) {
            best_ = std::min(best_, hungarian_bound());
            return;
        }
        const long long tail = tail_bound(depth);
        if (row_minimum_bound() + tail >= best_) return;
        if (hungarian_bound() + tail >= best_) return;

        const int d = order_[depth];
        // most promising targets first; skip duplicates of an already tried
        // approver set
        std::vector<int> targets;
        for (int c = 0; c < m_; ++c)
            if (!used_[c]) targets.push_back(c);
        std::sort(targets.begin(), targets.end(), [&](int a, int b) {
            const int ga = std::abs(count_e_[d] - count_f_[a]);
            const int gb = std::abs(count_e_[d] - count_f_[b]);
            if (ga != gb) return ga < gb;
            return a < b;
        });
        std::vector<char> tried_key(m_, 0);
        for (int c : targets) {
            if (tried_key[col_key_[c]]) continue;
            tried_key[col_key_[c]] = 1;
            used_[c] = 1;
            apply(d, c, +1);
            dfs(depth + 1);
            apply(d, c, -1);
            used_[c] = 0;
        }
    }

    int m_, n_;
    std::vector<std::vector<char>> cols_e_, cols_f_;
    std::vector<int> count_e_, count_f_, order_, col_key_;
    std::vector<std::vector<int>> partial_;
    std::vector<char> used_;
    long long best_;
};

}  // namespace

long long isomorphic_hamming_distance(const ApprovalElection& e,
                                      const ApprovalElection& f,
                                      int candidate_cap) {
    check_valid(e);
    check_valid(f);
    if (e.m() != f.m() || e.n() != f.n())
        throw std::invalid_argument(
            "isomorphic_hamming_distance: elections must share m and n");
    if (e.m() > candidate_cap)
        throw BudgetError("isomorphic_hamming_distance: candidate cap exceeded");
    if (e.n() == 0) return 0;
    return HammingSearch(e, f).run();
}

double max_approval_score(const ApprovalElection& e) {
    check_valid(e);
    if (e.n() == 0) return 0.0;
    std::vector<int> tally(e.m(), 0);
    for (const auto& v : e.votes)
        for (int c : v.approved) ++tally[c];
    return static_cast<double>(*std::max_element(tally.begin(), tally.end())) / e.n();
}

int cohesiveness_level(const ApprovalElection& e, int k) {
    check_valid(e);
    if (k < 1 || k > 10)
        throw std::invalid_argument("cohesiveness_level: need 1 <= k <= 10");
    if (e.m() > 20)
        throw BudgetError("cohesiveness_level: refusing more than 20 candidates");
    const int n = e.n();
    if (n == 0) return 0;

    std::vector<std::uint32_t> masks(n, 0);
    for (int i = 0; i < n; ++i)
        for (int c : e.votes[i].approved) masks[i] |= 1u << c;
    std::vector<int> tally(e.m(), 0);
    for (int i = 0; i < n; ++i)
        for (int c : e.votes[i].approved) ++tally[c];

    for (int level = std::min(k, e.m()); level >= 1; --level) {
        // a group of size >= level*n/k must sit inside every member's
        // approver set, so only well-approved candidates can participate
        std::vector<int> eligible;
        for (int c = 0; c < e.m(); ++c)
            if (static_cast<long long>(tally[c]) * k >= static_cast<long long>(level) * n)
                eligible.push_back(c);
        if (static_cast<int>(eligible.size()) < level) continue;

        std::vector<int> pick(level);
        for (int i = 0; i < level; ++i) pick[i] = i;
        while (true) {
            std::uint32_t subset = 0;
            for (int i : pick) subset |= 1u << eligible[i];
            int approvers = 0;
            for (int i = 0; i < n; ++i)
                if ((masks[i] & subset) == subset) ++approvers;
            if (static_cast<long long>(approvers) * k >=
                static_cast<long long>(level) * n)
                return level;

            int move = level - 1;
            while (move >= 0 &&
                   pick[move] == static_cast<int>(eligible.size()) - level + move)
                --move;
            if (move < 0) break;
            ++pick[move];
            for (int i = move + 1; i < level; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    return 0;
}

double voters_in_1cohesive(const ApprovalElection& e, int k) {
    check_valid(e);
    if (k < 1) throw std::invalid_argument("voters_in_1cohesive: need k >= 1");
    const int n = e.n();
    if (n == 0) return 0.0;
    std::vector<int> tally(e.m(), 0);
    for (const auto& v : e.votes)
        for (int c : v.approved) ++tally[c];
    int covered = 0;
    for (const auto& v : e.votes) {
        for (int c : v.approved) {
            if (static_cast<long long>(tally[c]) * k >= n) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<double>(covered) / n;
}

namespace {

double pav_score(const ApprovalElection& e, const std::vector<int>& members,
                 const std::vector<double>& harmonic) {
    std::vector<char> in(e.m(), 0);
    for (int c : members) in[c] = 1;
    double score = 0.0;
    for (const auto& v : e.votes) {
        int hits = 0;
        for (int c : v.approved) hits += in[c];
        score += harmonic[hits];
    }
    return score;
}

}  // namespace

std::pair<Committee, double> av_committee(const ApprovalElection& e, int k) {
    check_valid(e);
    if (k < 1 || k > e.m())
        throw std::invalid_argument("av_committee: need 1 <= k <= m");
    std::vector<long long> tally(e.m(), 0);
    for (const auto& v : e.votes)
        for (int c : v.approved) ++tally[c];
    std::vector<int> by_score(e.m());
    for (int c = 0; c < e.m(); ++c) by_score[c] = c;
    std::stable_sort(by_score.begin(), by_score.end(),
                     [&](int a, int b) { return tally[a] > tally[b]; });
    Committee committee;
    committee.members.assign(by_score.begin(), by_score.begin() + k);
    std::sort(committee.members.begin(), committee.members.end());
    double score = 0.0;
    for (int c : committee.members) score += tally[c];
    return {committee, score};
}

std::pair<Committee, double> pav_committee(const ApprovalElection& e, int k,
                                           PavMode mode) {
    check_valid(e);
    if (k < 1 || k > e.m())
        throw std::invalid_argument("pav_committee: need 1 <= k <= m");
    std::vector<double> harmonic(e.m() + 1, 0.0);
    for (int t = 1; t <= e.m(); ++t) harmonic[t] = harmonic[t - 1] + 1.0 / t;

    if (mode == PavMode::Budget) {
        // greedy sequential PAV: always add the candidate with the largest
        // marginal harmonic gain
        std::vector<int> hits(e.n(), 0);
        std::vector<char> chosen(e.m(), 0);
        Committee committee;
        for (int round = 0; round < k; ++round) {
            int best_c = -1;
            double best_gain = -1.0;
            for (int c = 0; c < e.m(); ++c) {
                if (chosen[c]) continue;
                double gain = 0.0;
                for (int i = 0; i < e.n(); ++i)
                    if (e.votes[i].approves(c)) gain += 1.0 / (hits[i] + 1);
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            chosen[best_c] = 1;
            committee.members.push_back(best_c);
            for (int i = 0; i < e.n(); ++i)
                if (e.votes[i].approves(best_c)) ++hits[i];
        }
        std::sort(committee.members.begin(), committee.members.end());
        return {committee, pav_score(e, committee.members, harmonic)};
    }

    double combinations = 1.0;
    for (int i = 0; i < k; ++i) combinations = combinations * (e.m() - i) / (i + 1);
    if (combinations > 2e6)
        throw BudgetError("pav_committee: exact mode over the committee budget");

    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    Committee best;
    double best_score = -1.0;
    while (true) {
        const double score = pav_score(e, pick, harmonic);
        if (score > best_score + 1e-12) {
            best_score = score;
            best.members = pick;
        }
        int move = k - 1;
        while (move >= 0 && pick[move] == e.m() - k + move) --move;
        if (move < 0) break;
        ++pick[move];
        for (int i = move + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
    return {best, best_score};
}

}  // namespace votemap
