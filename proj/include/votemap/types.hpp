#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types shared by every layer: elections, aggregate matrices,
// distance matrices, and the seeded RNG.  Candidates and voters are plain
// integer indices; names only exist at the I/O boundary.

namespace votemap {

// Thrown when an exact computation would exceed its configured brute-force
// budget.  Callers must either raise the budget or use a cheaper metric;
// results are never silently approximated.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A complete strict ranking, most-preferred first.  ranking[i] is the
// candidate at position i (0-based).
struct PreferenceOrder {
    std::vector<int> ranking;

    int size() const { return static_cast<int>(ranking.size()); }

    // Inverse permutation: positions()[c] is the position of candidate c.
    std::vector<int> positions() const {
        std::vector<int> pos(ranking.size());
        for (int i = 0; i < size(); ++i) pos[ranking[i]] = i;
        return pos;
    }

    PreferenceOrder reversed() const {
        PreferenceOrder r = *this;
        for (int i = 0, j = r.size() - 1; i < j; ++i, --j)
            std::swap(r.ranking[i], r.ranking[j]);
        return r;
    }

    bool operator==(const PreferenceOrder& o) const { return ranking == o.ranking; }
    bool operator<(const PreferenceOrder& o) const { return ranking < o.ranking; }
};

struct OrdinalElection {
    int num_candidates = 0;
    std::vector<PreferenceOrder> votes;

    int m() const { return num_candidates; }
    int n() const { return static_cast<int>(votes.size()); }
};

// Approved candidates of one voter, kept sorted ascending.
struct ApprovalBallot {
    std::vector<int> approved;

    bool approves(int c) const {
        for (int a : approved) {
            if (a == c) return true;
            if (a > c) return false;
        }
        return false;
    }
    bool operator==(const ApprovalBallot& o) const { return approved == o.approved; }
    bool operator<(const ApprovalBallot& o) const { return approved < o.approved; }
};

struct ApprovalElection {
    int num_candidates = 0;
    std::vector<ApprovalBallot> votes;

    int m() const { return num_candidates; }
    int n() const { return static_cast<int>(votes.size()); }
};

// counts[i][c] = number of voters ranking candidate c at position i.
// Every row and every column sums to n.
struct PositionMatrix {
    int num_candidates = 0;
    int num_voters = 0;
    std::vector<std::vector<long long>> counts;
};

// Position matrix scaled by 1/n; bistochastic.
struct FrequencyMatrix {
    int num_candidates = 0;
    std::vector<std::vector<double>> fractions;
};

// wins[c][d] = number of voters preferring c to d (count form).  The
// fraction form divides by n; diagonal is unused.
struct PairwiseMatrix {
    int num_candidates = 0;
    int num_voters = 0;
    std::vector<std::vector<long long>> wins;

    double fraction(int c, int d) const {
        return static_cast<double>(wins[c][d]) / num_voters;
    }
};

// scores[c] = sum over votes of (m-1 - position of c).  Entries sum to
// n*m*(m-1)/2.
struct BordaVector {
    std::vector<long long> scores;
};

// Normalized approval scores sorted non-increasing.
struct ApprovalwiseVector {
    std::vector<double> values;
};

struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> d;

    int size() const { return static_cast<int>(labels.size()); }
    double at(int i, int j) const { return d[i][j]; }
};

// Deterministic 64-bit generator (xoshiro256**).  All sampling in the
// library goes through the helpers below so that a fixed seed produces the
// same election on every platform; no std::distribution is used anywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the four state words
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., bound-1}, rejection sampled (no modulo bias).
    int next_int(int bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % static_cast<std::uint64_t>(bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return static_cast<int>(v % static_cast<std::uint64_t>(bound));
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    // Standard normal via Box-Muller (cartesian form).
    double next_normal();

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[static_cast<std::size_t>(next_int(i + 1))]);
    }

  private:
    std::uint64_t state_[4];
};

// Shared validity checks; throw std::invalid_argument on violation.
void check_valid(const OrdinalElection& e);
void check_valid(const ApprovalElection& e);

PreferenceOrder identity_order(int m);

}  // namespace votemap
