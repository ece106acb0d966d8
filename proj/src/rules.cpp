#include "votemap/rules.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "votemap/core.hpp"

namespace votemap {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::vector<int> argmax_set(const std::vector<double>& scores) {
    std::vector<int> best;
    double top = -1e300;
    for (int c = 0; c < static_cast<int>(scores.size()); ++c) {
        if (scores[c] > top + 1e-9) {
            top = scores[c];
            best.assign(1, c);
        } else if (scores[c] > top - 1e-9) {
            best.push_back(c);
        }
    }
    return best;
}

ScoreReport make_report(std::string rule, std::vector<double> scores) {
    ScoreReport r;
    r.rule = std::move(rule);
    r.winners = argmax_set(scores);
    r.scores = std::move(scores);
    return r;
}

// Strict-majority threshold: a duel is won with at least this many votes.
long long majority_threshold(int n) { return n / 2 + 1; }

void check_committee(const OrdinalElection& e, const Committee& w) {
    require(!w.members.empty(), "committee is empty");
    std::vector<bool> seen(e.m(), false);
    for (int c : w.members) {
        require(c >= 0 && c < e.m(), "committee member out of range");
        require(!seen[c], "duplicate committee member");
        seen[c] = true;
    }
}

double committee_score(const OrdinalElection& e, const Committee& w,
                       CommitteeRule rule) {
    return rule == CommitteeRule::CC ? cc_score(e, w) : hb_score(e, w);
}

// Shared greedy-insertion body for CC and HB.
Committee greedy_committee(const OrdinalElection& e, int k, CommitteeRule rule) {
    require(k >= 1 && k <= e.m(), "committee size out of range");
    Committee w;
    for (int step = 0; step < k; ++step) {
        int pick = -1;
        double best = -1e300;
        for (int c = 0; c < e.m(); ++c) {
            if (w.contains(c)) continue;
            Committee trial = w;
            trial.members.insert(
                std::lower_bound(trial.members.begin(), trial.members.end(), c), c);
            double s = committee_score(e, trial, rule);
            if (s > best + 1e-9) {
                best = s;
                pick = c;
            }
        }
        w.members.insert(std::lower_bound(w.members.begin(), w.members.end(), pick),
                         pick);
    }
    return w;
}

Committee removal_committee(const OrdinalElection& e, int k, CommitteeRule rule) {
    require(k >= 1 && k <= e.m(), "committee size out of range");
    Committee w;
    w.members.resize(e.m());
    for (int c = 0; c < e.m(); ++c) w.members[c] = c;
    while (w.k() > k) {
        int drop = -1;
        double best = -1e300;
        for (int idx = 0; idx < w.k(); ++idx) {
            Committee trial = w;
            trial.members.erase(trial.members.begin() + idx);
            double s = committee_score(e, trial, rule);
            if (s > best + 1e-9) {
                best = s;
                drop = idx;
            }
        }
        w.members.erase(w.members.begin() + drop);
    }
    return w;
}

}  // namespace

bool Committee::contains(int c) const {
    return std::binary_search(members.begin(), members.end(), c);
}

ScoreReport plurality_scores(const OrdinalElection& e) {
    std::vector<double> s(e.m(), 0.0);
    for (const auto& v : e.votes) s[v.ranking[0]] += 1.0;
    return make_report("plurality", std::move(s));
}

ScoreReport borda_scores(const OrdinalElection& e) {
    auto b = borda_vector(e).scores;
    return make_report("borda", std::vector<double>(b.begin(), b.end()));
}

ScoreReport copeland_scores(const OrdinalElection& e) {
    auto pm = pairwise_matrix(e);
    std::vector<double> s(e.m(), 0.0);
    for (int c = 0; c < e.m(); ++c)
        for (int d = c + 1; d < e.m(); ++d) {
            if (pm.wins[c][d] > pm.wins[d][c]) s[c] += 1.0;
            else if (pm.wins[c][d] < pm.wins[d][c]) s[d] += 1.0;
            else {
                s[c] += 0.5;
                s[d] += 0.5;
            }
        }
    return make_report("copeland", std::move(s));
}

std::optional<int> condorcet_winner(const OrdinalElection& e) {
    auto pm = pairwise_matrix(e);
    long long need = majority_threshold(e.n());
    for (int c = 0; c < e.m(); ++c) {
        bool wins_all = true;
        for (int d = 0; d < e.m() && wins_all; ++d)
            if (d != c && pm.wins[c][d] < need) wins_all = false;
        if (wins_all) return c;
    }
    return std::nullopt;
}

namespace {

// Exact Dodgson search.  A vote can lift the candidate by any number of
// positions; lifting by one extra slot passes exactly one rival, so the sum
// of outstanding duel deficits is an admissible bound on the remaining
// swaps.
class DodgsonSearch {
  public:
    DodgsonSearch(const OrdinalElection& e, int candidate)
        : m_(e.m()), candidate_(candidate) {
        auto pm = pairwise_matrix(e);
        long long need = majority_threshold(e.n());
        deficits_.assign(m_, 0);
        total_deficit_ = 0;
        for (int d = 0; d < m_; ++d) {
            if (d == candidate_) continue;
            deficits_[d] = std::max(0LL, need - pm.wins[candidate_][d]);
            total_deficit_ += deficits_[d];
        }
        // Per vote, the rivals passed by lifting 1, 2, ... positions.  Only
        // prefixes ending at an initially deficient rival can appear in an
        // optimal solution, so everything above the last such rival is cut,
        // and votes with no deficient rival above the candidate drop out.
        for (const auto& v : e.votes) {
            auto pos = v.positions();
            int p = pos[candidate_];
            std::vector<int> above(p);
            for (int i = 0; i < p; ++i) above[i] = v.ranking[p - 1 - i];
            while (!above.empty() && deficits_[above.back()] == 0) above.pop_back();
            if (!above.empty()) lifts_.push_back(std::move(above));
        }
        // votes with the candidate high up first: they offer cheap gains
        std::sort(lifts_.begin(), lifts_.end(),
                  [](const auto& a, const auto& b) { return a.size() < b.size(); });

        // how many later votes can still pass each rival
        supply_.assign(lifts_.size() + 1, std::vector<long long>(m_, 0));
        for (int i = static_cast<int>(lifts_.size()) - 1; i >= 0; --i) {
            supply_[i] = supply_[i + 1];
            for (int rival : lifts_[i]) ++supply_[i][rival];
        }
    }

    long long run() {
        if (total_deficit_ == 0) return 0;
        best_ = greedy_upper_bound();
        search(0, 0, total_deficit_);
        return best_;
    }

  private:
    // Feasible incumbent: repeatedly extend whichever vote's lift buys the
    // most still-needed deficit units per swap.
    long long greedy_upper_bound() const {
        auto deficits = deficits_;
        long long remaining = total_deficit_;
        std::vector<int> lifted(lifts_.size(), 0);
        long long cost = 0;
        while (remaining > 0) {
            int pick = -1, pick_to = 0;
            long long pick_gain = 0;
            double pick_rate = 0.0;
            for (std::size_t i = 0; i < lifts_.size(); ++i) {
                long long gain = 0;
                for (int t = lifted[i]; t < static_cast<int>(lifts_[i].size()); ++t) {
                    if (deficits[lifts_[i][t]] > 0) ++gain;
                    if (gain == 0) continue;
                    const double rate = static_cast<double>(gain) / (t + 1 - lifted[i]);
                    if (rate > pick_rate + 1e-12) {
                        pick_rate = rate;
                        pick = static_cast<int>(i);
                        pick_to = t + 1;
                        pick_gain = gain;
                    }
                }
            }
            if (pick < 0) break;  // cannot happen: full lifts always suffice
            for (int t = lifted[pick]; t < pick_to; ++t) {
                auto& d = deficits[lifts_[pick][t]];
                if (d > 0) --d;
            }
            cost += pick_to - lifted[pick];
            lifted[pick] = pick_to;
            remaining -= pick_gain;
        }
        return cost;
    }

    void search(std::size_t vote, long long spent, long long remaining) {
        if (remaining == 0) {
            best_ = std::min(best_, spent);
            return;
        }
        // every outstanding deficit unit costs at least one swap
        if (vote >= lifts_.size() || spent + remaining >= best_) return;
        // the votes left must still be able to cover every deficit
        for (int d = 0; d < m_; ++d)
            if (deficits_[d] > supply_[vote][d]) return;

        const auto& above = lifts_[vote];
        // lift by t positions; only lifts that pass a still-deficient rival
        // at their last step are worth their final swap
        search(vote + 1, spent, remaining);
        long long gain = 0;
        std::vector<int> touched;
        for (std::size_t t = 0; t < above.size(); ++t) {
            int rival = above[t];
            if (deficits_[rival] > 0) {
                --deficits_[rival];
                ++gain;
                touched.push_back(rival);
                search(vote + 1, spent + static_cast<long long>(t + 1), remaining - gain);
            }
        }
        for (int rival : touched) ++deficits_[rival];
    }

    int m_;
    int candidate_;
    std::vector<long long> deficits_;
    long long total_deficit_ = 0;
    std::vector<std::vector<int>> lifts_;
    std::vector<std::vector<long long>> supply_;
    long long best_ = 0;
};

}  // namespace

long long dodgson_score(const OrdinalElection& e, int candidate, int cap) {
    require(candidate >= 0 && candidate < e.m(), "candidate out of range");
    if (e.m() > cap)
        throw BudgetError("dodgson_score: m exceeds the search cap " + std::to_string(cap));
    DodgsonSearch search(e, candidate);
    return search.run();
}

ScoreReport dodgson_winner(const OrdinalElection& e, int cap) {
    std::vector<double> s(e.m());
    for (int c = 0; c < e.m(); ++c)
        s[c] = static_cast<double>(dodgson_score(e, c, cap));
    // lowest swap count wins; report negated scores so argmax applies
    std::vector<double> neg(s);
    for (auto& v : neg) v = -v;
    ScoreReport r = make_report("dodgson", std::move(neg));
    r.scores = std::move(s);
    return r;
}

double cc_score(const OrdinalElection& e, const Committee& w) {
    check_committee(e, w);
    double total = 0.0;
    for (const auto& v : e.votes) {
        auto pos = v.positions();
        int best = e.m();
        for (int c : w.members) best = std::min(best, pos[c]);
        total += e.m() - 1 - best;
    }
    return total;
}

double hb_score(const OrdinalElection& e, const Committee& w) {
    check_committee(e, w);
    double total = 0.0;
    for (const auto& v : e.votes) {
        auto pos = v.positions();
        std::vector<int> ranks;
        ranks.reserve(w.k());
        for (int c : w.members) ranks.push_back(pos[c]);
        std::sort(ranks.begin(), ranks.end());
        for (int i = 0; i < static_cast<int>(ranks.size()); ++i)
            total += static_cast<double>(e.m() - 1 - ranks[i]) / (i + 1);
    }
    return total;
}

std::pair<Committee, double> exact_committee(const OrdinalElection& e, int k,
                                             CommitteeRule rule) {
    require(k >= 1 && k <= e.m(), "committee size out of range");
    // C(m, k) committees; refuse absurd enumerations
    double combos = 1.0;
    for (int i = 0; i < k; ++i) combos = combos * (e.m() - i) / (i + 1);
    if (combos > 2e6)
        throw BudgetError("exact_committee: too many committees to enumerate");

    Committee current, best;
    double best_score = -1e300;
    current.members.resize(k);
    // standard lexicographic k-subset enumeration
    for (int i = 0; i < k; ++i) current.members[i] = i;
    while (true) {
        double s = committee_score(e, current, rule);
        if (s > best_score + 1e-9) {
            best_score = s;
            best = current;
        }
        int i = k - 1;
        while (i >= 0 && current.members[i] == e.m() - k + i) --i;
        if (i < 0) break;
        ++current.members[i];
        for (int j = i + 1; j < k; ++j) current.members[j] = current.members[j - 1] + 1;
    }
    return {best, best_score};
}

Committee seq_cc(const OrdinalElection& e, int k) {
    return greedy_committee(e, k, CommitteeRule::CC);
}

Committee seq_hb(const OrdinalElection& e, int k) {
    return greedy_committee(e, k, CommitteeRule::HB);
}

Committee removal_cc(const OrdinalElection& e, int k) {
    return removal_committee(e, k, CommitteeRule::CC);
}

Committee removal_hb(const OrdinalElection& e, int k) {
    return removal_committee(e, k, CommitteeRule::HB);
}

namespace {

// Mean CC gain of adding `cand` to `partial`, over all size-(k-|partial|-1)
// completions drawn from the other free candidates.
double banzhaf_value(const OrdinalElection& e,
                     const std::vector<std::vector<int>>& positions,
                     const std::vector<int>& partial, int cand, int k) {
    int m = e.m(), n = e.n();
    std::vector<int> pool;
    for (int c = 0; c < m; ++c)
        if (c != cand && std::find(partial.begin(), partial.end(), c) == partial.end())
            pool.push_back(c);
    int need = k - static_cast<int>(partial.size()) - 1;

    std::vector<int> base(n, m);  // best (lowest) committee position so far
    for (int i = 0; i < n; ++i)
        for (int c : partial) base[i] = std::min(base[i], positions[i][c]);

    double total = 0.0;
    long long count = 0;
    // enumerate completions T of size `need` from pool
    std::vector<int> stack;
    std::vector<std::vector<int>> best_stack{base};
    auto gain_now = [&]() {
        const auto& cur = best_stack.back();
        double g = 0.0;
        for (int i = 0; i < n; ++i)
            if (positions[i][cand] < cur[i]) g += cur[i] - positions[i][cand];
        return g;
    };
    std::function<void(int, int)> rec = [&](int from, int left) {
        if (left == 0) {
            total += gain_now();
            ++count;
            return;
        }
        for (int idx = from; idx <= static_cast<int>(pool.size()) - left; ++idx) {
            auto cur = best_stack.back();
            for (int i = 0; i < n; ++i) cur[i] = std::min(cur[i], positions[i][pool[idx]]);
            best_stack.push_back(std::move(cur));
            rec(idx + 1, left - 1);
            best_stack.pop_back();
        }
    };
    rec(0, need);
    return count > 0 ? total / static_cast<double>(count) : 0.0;
}

}  // namespace

Committee banzhaf_cc(const OrdinalElection& e, int k) {
    require(k >= 1 && k <= e.m(), "committee size out of range");
    double combos = 1.0;
    for (int i = 0; i < k; ++i) combos = combos * (e.m() - i) / (i + 1);
    if (combos > 1e6)
        throw BudgetError("banzhaf_cc: complement enumeration too large");

    std::vector<std::vector<int>> positions;
    positions.reserve(e.n());
    for (const auto& v : e.votes) positions.push_back(v.positions());

    std::vector<int> chosen;
    for (int step = 0; step < k; ++step) {
        int pick = -1;
        double best = -1e300;
        for (int c = 0; c < e.m(); ++c) {
            if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
            double v = banzhaf_value(e, positions, chosen, c, k);
            if (v > best + 1e-9) {
                best = v;
                pick = c;
            }
        }
        chosen.push_back(pick);
    }
    std::sort(chosen.begin(), chosen.end());
    Committee w;
    w.members = std::move(chosen);
    return w;
}

Committee ranging_cc(const OrdinalElection& e, int k) {
    require(k >= 1 && k <= e.m(), "committee size out of range");
    std::vector<std::vector<int>> positions;
    positions.reserve(e.n());
    for (const auto& v : e.votes) positions.push_back(v.positions());

    Committee best;
    double best_score = -1e300;
    for (int threshold = e.m(); threshold >= 1; --threshold) {
        // greedy max-coverage: voters count as covered when some member
        // sits within their top `threshold` positions
        std::vector<bool> covered(e.n(), false);
        std::vector<int> members;
        for (int step = 0; step < k; ++step) {
            int pick = -1, best_cover = -1;
            for (int c = 0; c < e.m(); ++c) {
                if (std::find(members.begin(), members.end(), c) != members.end())
                    continue;
                int cover = 0;
                for (int i = 0; i < e.n(); ++i)
                    if (!covered[i] && positions[i][c] < threshold) ++cover;
                if (cover > best_cover) {
                    best_cover = cover;
                    pick = c;
                }
            }
            members.push_back(pick);
            for (int i = 0; i < e.n(); ++i)
                if (positions[i][pick] < threshold) covered[i] = true;
        }
        std::sort(members.begin(), members.end());
        Committee w;
        w.members = std::move(members);
        double s = cc_score(e, w);
        if (s > best_score + 1e-9) {
            best_score = s;
            best = std::move(w);
        }
    }
    return best;
}

long long borda_spread(const OrdinalElection& e) {
    auto b = borda_vector(e).scores;
    auto [lo, hi] = std::minmax_element(b.begin(), b.end());
    return *hi - *lo;
}

}  // namespace votemap
