#include "votemap/cultures.hpp"

#include <algorithm>
#include <cmath>

namespace votemap {

CultureSpec CultureSpec::urn(double alpha) {
    CultureSpec s;
    s.kind = CultureKind::Urn;
    s.alpha = alpha;
    return s;
}

CultureSpec CultureSpec::mallows(double phi, std::optional<PreferenceOrder> central) {
    CultureSpec s;
    s.kind = CultureKind::Mallows;
    s.phi = phi;
    s.central = std::move(central);
    return s;
}

CultureSpec CultureSpec::norm_mallows(double norm_phi, double weight) {
    CultureSpec s;
    s.kind = CultureKind::NormMallows;
    s.norm_phi = norm_phi;
    s.weight = weight;
    return s;
}

CultureSpec CultureSpec::simple(CultureKind kind) {
    CultureSpec s;
    s.kind = kind;
    return s;
}

CultureSpec CultureSpec::group_separable(GSTree tree) {
    CultureSpec s;
    s.kind = CultureKind::GroupSeparable;
    s.tree = tree;
    return s;
}

CultureSpec CultureSpec::euclidean(EuclideanSpace space, int dimension) {
    CultureSpec s;
    s.kind = CultureKind::Euclidean;
    s.space = space;
    s.dimension = dimension;
    return s;
}

CultureSpec CultureSpec::compass_culture(CompassKind kind) {
    CultureSpec s;
    s.kind = CultureKind::Compass;
    s.compass = kind;
    return s;
}

namespace {

PreferenceOrder random_order(int m, Rng& rng) {
    PreferenceOrder v = identity_order(m);
    rng.shuffle(v.ranking);
    return v;
}

OrdinalElection sample_ic(int m, int n, Rng& rng) {
    OrdinalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    for (int i = 0; i < n; ++i) e.votes.push_back(random_order(m, rng));
    return e;
}

// Polya urn over all m! orders, tracked implicitly: the untouched urn
// contributes probability mass 1 (a fresh uniform draw) and every earlier
// draw contributes mass alpha (its alpha * m! added copies, divided by m!).
OrdinalElection sample_urn(double alpha, int m, int n, Rng& rng) {
    if (alpha < 0) throw std::invalid_argument("urn: alpha must be nonnegative");
    OrdinalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double total = 1.0 + i * alpha;
        const double u = rng.next_double() * total;
        if (u < 1.0 || i == 0) {
            e.votes.push_back(random_order(m, rng));
        } else {
            int j = static_cast<int>((u - 1.0) / alpha);
            if (j >= i) j = i - 1;
            e.votes.push_back(e.votes[j]);
        }
    }
    return e;
}

PreferenceOrder walsh_vote(const std::vector<int>& axis, Rng& rng) {
    // Uniform over single-peaked votes: fill the ranking bottom-up,
    // choosing one of the two current extremes of the axis by fair coin.
    const int m = static_cast<int>(axis.size());
    PreferenceOrder v;
    v.ranking.resize(m);
    int lo = 0, hi = m - 1;
    for (int slot = m - 1; slot >= 0; --slot) {
        if (lo == hi) {
            v.ranking[slot] = axis[lo];
        } else if (rng.next_bool()) {
            v.ranking[slot] = axis[hi--];
        } else {
            v.ranking[slot] = axis[lo++];
        }
    }
    return v;
}

PreferenceOrder conitzer_vote(const std::vector<int>& axis, Rng& rng) {
    // Random peak, then grow the prefix interval one step at a time,
    // choosing the available side by fair coin.
    const int m = static_cast<int>(axis.size());
    PreferenceOrder v;
    v.ranking.reserve(m);
    int peak = rng.next_int(m);
    int lo = peak, hi = peak;
    v.ranking.push_back(axis[peak]);
    while (static_cast<int>(v.ranking.size()) < m) {
        if (lo == 0) {
            v.ranking.push_back(axis[++hi]);
        } else if (hi == m - 1) {
            v.ranking.push_back(axis[--lo]);
        } else if (rng.next_bool()) {
            v.ranking.push_back(axis[++hi]);
        } else {
            v.ranking.push_back(axis[--lo]);
        }
    }
    return v;
}

PreferenceOrder spoc_vote(const std::vector<int>& axis, Rng& rng) {
    // Same prefix-interval construction, but on a cycle: both directions
    // are always available.
    const int m = static_cast<int>(axis.size());
    PreferenceOrder v;
    v.ranking.reserve(m);
    const int peak = rng.next_int(m);
    int left = peak, right = peak;
    v.ranking.push_back(axis[peak]);
    while (static_cast<int>(v.ranking.size()) < m) {
        if (rng.next_bool()) {
            right = (right + 1) % m;
            v.ranking.push_back(axis[right]);
        } else {
            left = (left + m - 1) % m;
            v.ranking.push_back(axis[left]);
        }
    }
    return v;
}

std::vector<PreferenceOrder> single_crossing_domain(int m, Rng& rng) {
    // Walk from the identity order to its reverse by uniformly chosen
    // adjacent swaps that each cross one still-uncrossed pair, giving
    // m(m-1)/2 + 1 votes with every pair crossing exactly once.
    std::vector<PreferenceOrder> domain;
    PreferenceOrder cur = identity_order(m);
    domain.push_back(cur);
    const int steps = m * (m - 1) / 2;
    std::vector<int> choices;
    for (int s = 0; s < steps; ++s) {
        choices.clear();
        for (int k = 0; k + 1 < m; ++k)
            if (cur.ranking[k] < cur.ranking[k + 1]) choices.push_back(k);
        const int k = choices[static_cast<std::size_t>(rng.next_int(static_cast<int>(choices.size())))];
        std::swap(cur.ranking[k], cur.ranking[k + 1]);
        domain.push_back(cur);
    }
    return domain;
}

OrdinalElection sample_single_crossing(int m, int n, Rng& rng) {
    auto domain = single_crossing_domain(m, rng);
    // relabel by a random bijection so the start order is not always 0..m-1
    const PreferenceOrder sigma = random_order(m, rng);
    for (auto& vote : domain)
        for (auto& c : vote.ranking) c = sigma.ranking[c];
    OrdinalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    for (int i = 0; i < n; ++i)
        e.votes.push_back(domain[static_cast<std::size_t>(rng.next_int(static_cast<int>(domain.size())))]);
    return e;
}

struct GSNode {
    int leaf = -1;                   // candidate index when a leaf
    int left = -1, right = -1;       // child node ids otherwise
};

int build_balanced(std::vector<GSNode>& nodes, const std::vector<int>& leaves, int lo, int hi) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    if (lo == hi) {
        nodes[id].leaf = leaves[lo];
        return id;
    }
    const int mid = lo + (hi - lo) / 2;
    const int l = build_balanced(nodes, leaves, lo, mid);
    const int r = build_balanced(nodes, leaves, mid + 1, hi);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
}

int build_caterpillar(std::vector<GSNode>& nodes, const std::vector<int>& leaves, int lo) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    if (lo == static_cast<int>(leaves.size()) - 1) {
        nodes[id].leaf = leaves[lo];
        return id;
    }
    const int l = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[l].leaf = leaves[lo];
    const int r = build_caterpillar(nodes, leaves, lo + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
}

void gs_frontier(const std::vector<GSNode>& nodes, int id, const std::vector<char>& reversed,
                 std::vector<int>& out) {
    const GSNode& node = nodes[id];
    if (node.leaf >= 0) {
        out.push_back(node.leaf);
        return;
    }
    if (reversed[id]) {
        gs_frontier(nodes, node.right, reversed, out);
        gs_frontier(nodes, node.left, reversed, out);
    } else {
        gs_frontier(nodes, node.left, reversed, out);
        gs_frontier(nodes, node.right, reversed, out);
    }
}

OrdinalElection sample_group_separable(GSTree tree, int m, int n, Rng& rng) {
    std::vector<int> leaves = random_order(m, rng).ranking;
    std::vector<GSNode> nodes;
    int root;
    if (tree == GSTree::Caterpillar) {
        root = build_caterpillar(nodes, leaves, 0);
    } else {
        root = build_balanced(nodes, leaves, 0, m - 1);
    }
    OrdinalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    std::vector<char> reversed(nodes.size(), 0);
    for (int i = 0; i < n; ++i) {
        for (std::size_t id = 0; id < nodes.size(); ++id)
            reversed[id] = nodes[id].leaf < 0 && rng.next_bool() ? 1 : 0;
        PreferenceOrder v;
        v.ranking.reserve(m);
        gs_frontier(nodes, root, reversed, v.ranking);
        e.votes.push_back(std::move(v));
    }
    return e;
}

using Point = std::vector<double>;

Point sample_point(const CultureSpec& spec, Rng& rng) {
    switch (spec.space) {
        case EuclideanSpace::Interval:
            return {rng.next_double()};
        case EuclideanSpace::Square:
            return {rng.next_double(), rng.next_double()};
        case EuclideanSpace::Cube:
            return {rng.next_double(), rng.next_double(), rng.next_double()};
        case EuclideanSpace::NCube: {
            Point p(static_cast<std::size_t>(spec.dimension));
            for (auto& x : p) x = rng.next_double();
            return p;
        }
        case EuclideanSpace::Disc: {
            const double r = spec.radius * std::sqrt(rng.next_double());
            const double theta = 2.0 * M_PI * rng.next_double();
            return {spec.center_x + r * std::cos(theta), spec.center_y + r * std::sin(theta)};
        }
        case EuclideanSpace::Circle: {
            const double theta = 2.0 * M_PI * rng.next_double();
            return {spec.center_x + spec.radius * std::cos(theta),
                    spec.center_y + spec.radius * std::sin(theta)};
        }
        case EuclideanSpace::Sphere:
        case EuclideanSpace::NSphere: {
            const int dim = spec.space == EuclideanSpace::Sphere ? 3 : spec.dimension;
            Point p(static_cast<std::size_t>(dim));
            double norm = 0.0;
            do {
                norm = 0.0;
                for (auto& x : p) {
                    x = rng.next_normal();
                    norm += x * x;
                }
            } while (norm == 0.0);
            norm = std::sqrt(norm);
            for (auto& x : p) x = spec.radius * x / norm;
            return p;
        }
    }
    throw std::invalid_argument("euclidean: unknown space");
}

OrdinalElection sample_euclidean(const CultureSpec& spec, int m, int n, Rng& rng) {
    std::vector<Point> candidates(static_cast<std::size_t>(m));
    for (auto& p : candidates) p = sample_point(spec, rng);
    OrdinalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    std::vector<std::pair<double, int>> order(static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        const Point voter = sample_point(spec, rng);
        for (int c = 0; c < m; ++c) {
            double d2 = 0.0;
            for (std::size_t t = 0; t < voter.size(); ++t) {
                const double diff = voter[t] - candidates[static_cast<std::size_t>(c)][t];
                d2 += diff * diff;
            }
            order[static_cast<std::size_t>(c)] = {d2, c};
        }
        std::sort(order.begin(), order.end());
        PreferenceOrder v;
        v.ranking.reserve(m);
        for (const auto& [d2, c] : order) v.ranking.push_back(c);
        e.votes.push_back(std::move(v));
    }
    return e;
}

}  // namespace

PreferenceOrder mallows_insertion_sample(double phi, const PreferenceOrder& central, Rng& rng) {
    if (phi < 0.0 || phi > 1.0) throw std::invalid_argument("mallows: phi must lie in [0,1]");
    const int m = central.size();
    std::vector<int> partial;
    partial.reserve(static_cast<std::size_t>(m));
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        // insertion at 0-based slot j of i+1 slots costs i-j inversions
        weights.resize(static_cast<std::size_t>(i) + 1);
        double total = 0.0, w = 1.0;
        for (int j = i; j >= 0; --j) {
            weights[static_cast<std::size_t>(j)] = w;
            total += w;
            w *= phi;
        }
        double u = rng.next_double() * total;
        int slot = i;
        for (int j = 0; j <= i; ++j) {
            u -= weights[static_cast<std::size_t>(j)];
            if (u <= 0.0) {
                slot = j;
                break;
            }
        }
        partial.insert(partial.begin() + slot, central.ranking[static_cast<std::size_t>(i)]);
    }
    PreferenceOrder v;
    v.ranking = std::move(partial);
    return v;
}

double mallows_expected_swaps(double phi, int m) {
    if (m < 2) return 0.0;
    if (phi >= 1.0) return m * (m - 1) / 4.0;
    double expectation = 0.0;
    for (int i = 2; i <= m; ++i) {
        double num = 0.0, den = 0.0, w = 1.0;
        for (int k = 0; k < i; ++k) {
            num += k * w;
            den += w;
            w *= phi;
        }
        expectation += num / den;
    }
    return expectation;
}

double normalize_phi(double norm_phi, int m) {
    if (norm_phi < 0.0 || norm_phi > 1.0)
        throw std::invalid_argument("normalize_phi: norm_phi must lie in [0,1]");
    if (m < 2) throw std::invalid_argument("normalize_phi: need m >= 2");
    if (norm_phi == 0.0) return 0.0;
    if (norm_phi == 1.0) return 1.0;
    const double target = norm_phi / 2.0 * (m * (m - 1) / 2.0);
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double value = mallows_expected_swaps(mid, m);
        if (std::fabs(value - target) <= 1e-10) return mid;
        if (value < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-16) break;
    }
    return 0.5 * (lo + hi);
}

double urn_expected_distinct_bound(double alpha, int n) {
    double bound = 0.0;
    for (int i = 1; i <= n; ++i) bound += 1.0 / (1.0 + (i - 1) * alpha);
    return bound;
}

OrdinalElection compass_election(CompassKind kind, int m, int n, Rng& rng) {
    if (m < 1 || n < 1) throw std::invalid_argument("compass: need m, n >= 1");
    OrdinalElection e;
    e.num_candidates = m;
    e.votes.reserve(n);
    switch (kind) {
        case CompassKind::ID: {
            const PreferenceOrder v = identity_order(m);
            for (int i = 0; i < n; ++i) e.votes.push_back(v);
            break;
        }
        case CompassKind::AN: {
            if (n % 2 != 0) throw std::invalid_argument("compass AN: n must be even");
            const PreferenceOrder v = identity_order(m);
            const PreferenceOrder r = v.reversed();
            for (int i = 0; i < n / 2; ++i) e.votes.push_back(v);
            for (int i = 0; i < n / 2; ++i) e.votes.push_back(r);
            break;
        }
        case CompassKind::UN:
            return sample_ic(m, n, rng);
        case CompassKind::ST: {
            if (m % 2 != 0) throw std::invalid_argument("compass ST: m must be even");
            std::vector<int> upper(static_cast<std::size_t>(m / 2)), lower(static_cast<std::size_t>(m / 2));
            for (int i = 0; i < n; ++i) {
                for (int c = 0; c < m / 2; ++c) {
                    upper[static_cast<std::size_t>(c)] = c;
                    lower[static_cast<std::size_t>(c)] = m / 2 + c;
                }
                rng.shuffle(upper);
                rng.shuffle(lower);
                PreferenceOrder v;
                v.ranking = upper;
                v.ranking.insert(v.ranking.end(), lower.begin(), lower.end());
                e.votes.push_back(std::move(v));
            }
            break;
        }
    }
    return e;
}

OrdinalElection sample_election(const CultureSpec& spec, int m, int n, Rng& rng) {
    if (m < 1 || n < 1) throw std::invalid_argument("sample_election: need m, n >= 1");
    switch (spec.kind) {
        case CultureKind::IC:
            return sample_ic(m, n, rng);
        case CultureKind::Urn:
            return sample_urn(spec.alpha, m, n, rng);
        case CultureKind::Mallows:
        case CultureKind::NormMallows: {
            double phi = spec.phi;
            if (spec.kind == CultureKind::NormMallows) {
                if (spec.weight < 0.0 || spec.weight > 0.5)
                    throw std::invalid_argument("norm-mallows: weight must lie in [0, 0.5]");
                phi = normalize_phi(spec.norm_phi, m);
            }
            const PreferenceOrder central =
                spec.central.has_value() ? *spec.central : random_order(m, rng);
            if (spec.central.has_value() && central.size() != m)
                throw std::invalid_argument("mallows: central vote has wrong length");
            OrdinalElection e;
            e.num_candidates = m;
            e.votes.reserve(n);
            for (int i = 0; i < n; ++i) e.votes.push_back(mallows_insertion_sample(phi, central, rng));
            if (spec.kind == CultureKind::NormMallows) {
                const int reversed = static_cast<int>(spec.weight * n);
                for (int i = 0; i < reversed; ++i) e.votes[i] = e.votes[i].reversed();
            }
            return e;
        }
        case CultureKind::Walsh:
        case CultureKind::Conitzer: {
            const std::vector<int> axis = random_order(m, rng).ranking;
            OrdinalElection e;
            e.num_candidates = m;
            e.votes.reserve(n);
            for (int i = 0; i < n; ++i)
                e.votes.push_back(spec.kind == CultureKind::Walsh ? walsh_vote(axis, rng)
                                                                  : conitzer_vote(axis, rng));
            return e;
        }
        case CultureKind::SPOC: {
            const std::vector<int> axis = random_order(m, rng).ranking;
            OrdinalElection e;
            e.num_candidates = m;
            e.votes.reserve(n);
            for (int i = 0; i < n; ++i) e.votes.push_back(spoc_vote(axis, rng));
            return e;
        }
        case CultureKind::SingleCrossing:
            return sample_single_crossing(m, n, rng);
        case CultureKind::GroupSeparable:
            if (spec.tree == GSTree::Custom)
                throw std::invalid_argument("group-separable: custom trees need an explicit tree");
            return sample_group_separable(spec.tree, m, n, rng);
        case CultureKind::Euclidean:
            return sample_euclidean(spec, m, n, rng);
        case CultureKind::Compass:
            return compass_election(spec.compass, m, n, rng);
    }
    throw std::invalid_argument("sample_election: unknown culture");
}

}  // namespace votemap
