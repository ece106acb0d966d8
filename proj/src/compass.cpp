#include "votemap/compass.hpp"

#include <stdexcept>
#include <string>

namespace votemap {

namespace {

const char* point_name(CompassPoint p) {
    switch (p) {
        case CompassPoint::ID: return "ID";
        case CompassPoint::UN: return "UN";
        case CompassPoint::AN: return "AN";
        case CompassPoint::ST: return "ST";
        case CompassPoint::RID: return "rID";
    }
    return "?";
}

long long factorial(int m) {
    long long f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// Distances are blind to candidate relabeling, so rID behaves exactly like
// ID against every other point.
CompassPoint canonical(CompassPoint p) {
    return p == CompassPoint::RID ? CompassPoint::ID : p;
}

[[noreturn]] void unsupported(const std::string& what) {
    throw std::invalid_argument("compass_distance: " + what);
}

}  // namespace

FrequencyMatrix compass_matrix(CompassPoint kind, int m) {
    if (m <= 0) throw std::invalid_argument("compass_matrix: m must be positive");
    if (kind == CompassPoint::ST && m % 2 != 0)
        throw std::invalid_argument("compass_matrix: ST needs an even number of candidates");

    FrequencyMatrix f;
    f.num_candidates = m;
    f.fractions.assign(m, std::vector<double>(m, 0.0));
    switch (kind) {
        case CompassPoint::ID:
            for (int i = 0; i < m; ++i) f.fractions[i][i] = 1.0;
            break;
        case CompassPoint::RID:
            for (int i = 0; i < m; ++i) f.fractions[i][m - 1 - i] = 1.0;
            break;
        case CompassPoint::UN:
            for (auto& row : f.fractions) row.assign(m, 1.0 / m);
            break;
        case CompassPoint::AN:
            for (int i = 0; i < m; ++i) {
                f.fractions[i][i] += 0.5;
                f.fractions[i][m - 1 - i] += 0.5;
            }
            break;
        case CompassPoint::ST:
            // two stacked UN blocks of size m/2
            for (int i = 0; i < m; ++i)
                for (int c = 0; c < m; ++c)
                    if ((i < m / 2) == (c < m / 2)) f.fractions[i][c] = 2.0 / m;
            break;
    }
    return f;
}

PairwiseMatrix compass_pairwise_matrix(CompassPoint kind, int m) {
    if (m <= 0) throw std::invalid_argument("compass_pairwise_matrix: m must be positive");
    if (kind == CompassPoint::ST && m % 2 != 0)
        throw std::invalid_argument("compass_pairwise_matrix: ST needs an even number of candidates");

    // Win fractions of the compass points are all multiples of 1/2, so a
    // two-voter count matrix represents them without rounding.
    PairwiseMatrix pm;
    pm.num_candidates = m;
    pm.num_voters = 2;
    pm.wins.assign(m, std::vector<long long>(m, 0));
    for (int c = 0; c < m; ++c) {
        for (int d = 0; d < m; ++d) {
            if (c == d) continue;
            switch (kind) {
                case CompassPoint::ID: pm.wins[c][d] = c < d ? 2 : 0; break;
                case CompassPoint::RID: pm.wins[c][d] = c > d ? 2 : 0; break;
                case CompassPoint::UN:
                case CompassPoint::AN: pm.wins[c][d] = 1; break;
                case CompassPoint::ST: {
                    bool ct = c < m / 2, dt = d < m / 2;
                    if (ct == dt) pm.wins[c][d] = 1;
                    else pm.wins[c][d] = ct ? 2 : 0;
                    break;
                }
            }
        }
    }
    return pm;
}

std::vector<double> frequency_borda_scores(const FrequencyMatrix& f) {
    int m = f.num_candidates;
    std::vector<double> b(m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < m; ++c) b[c] += f.fractions[i][c] * (m - 1 - i);
    return b;
}

FrequencyMatrix convex_path(const FrequencyMatrix& x, const FrequencyMatrix& y,
                            double alpha) {
    if (x.num_candidates != y.num_candidates)
        throw std::invalid_argument("convex_path: matrix sizes differ");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("convex_path: alpha must lie in [0, 1]");
    FrequencyMatrix z = x;
    for (int i = 0; i < z.num_candidates; ++i)
        for (int c = 0; c < z.num_candidates; ++c)
            z.fractions[i][c] = alpha * x.fractions[i][c] + (1.0 - alpha) * y.fractions[i][c];
    return z;
}

double compass_distance(CompassMetric metric, CompassPoint a, CompassPoint b,
                        int m, long long n, bool count_form) {
    if (m <= 0) unsupported("m must be positive");
    CompassPoint p = canonical(a), q = canonical(b);
    if (static_cast<int>(p) > static_cast<int>(q)) std::swap(p, q);
    const std::string pair_name =
        std::string(point_name(p)) + "-" + point_name(q);

    bool has_st = q == CompassPoint::ST;
    bool has_an = p == CompassPoint::AN || q == CompassPoint::AN;
    auto need = [&](bool ok, const char* what) {
        if (!ok) unsupported(pair_name + " requires " + what);
    };

    if (metric == CompassMetric::EmdPos || metric == CompassMetric::L1Pos) {
        if (p == q) return 0.0;
        // The positionwise propositions are stated for m divisible by 4
        // (except ID-UN, which holds for every m).
        bool id_un = p == CompassPoint::ID && q == CompassPoint::UN;
        if (!id_un) need(m % 4 == 0, "m divisible by 4");
        double v = 0.0;
        if (metric == CompassMetric::EmdPos) {
            if (id_un) v = (static_cast<double>(m) * m - 1.0) / 3.0;
            else if (p == CompassPoint::ID && q == CompassPoint::AN) v = m * m / 4.0;
            else if (p == CompassPoint::ID && q == CompassPoint::ST) v = (m * m - 4.0) / 6.0;
            else if (p == CompassPoint::UN && q == CompassPoint::AN) v = (m * m - 4.0) / 6.0;
            else if (p == CompassPoint::UN && q == CompassPoint::ST) v = m * m / 4.0;
            else v = 13.0 * m * m / 48.0 - 1.0 / 3.0;  // AN-ST
        } else {
            if (id_un) v = 2.0 * (m - 1);
            else if (p == CompassPoint::ID && q == CompassPoint::AN) v = m;
            else if (p == CompassPoint::UN && q == CompassPoint::ST) v = m;
            else v = 2.0 * (m - 2);  // ID-ST, UN-AN, AN-ST
        }
        return v;
    }

    if (metric == CompassMetric::Pair || metric == CompassMetric::Borda) {
        if (has_st) need(m % 2 == 0, "even m");
        double v = 0.0;
        if (p == q || (p == CompassPoint::UN && q == CompassPoint::AN)) {
            v = 0.0;
        } else if (metric == CompassMetric::Pair) {
            if (q == CompassPoint::UN || (p == CompassPoint::ID && has_an))
                v = m * (m - 1) / 2.0;  // ID-UN, ID-AN
            else if (p == CompassPoint::ID)
                v = m * (m - 2) / 4.0;  // ID-ST
            else
                v = m * m / 4.0;  // UN-ST, AN-ST
        } else {
            double md = m;
            if (q == CompassPoint::UN || (p == CompassPoint::ID && has_an))
                v = md * (md * md - 1.0) / 12.0;  // ID-UN, ID-AN
            else if (p == CompassPoint::ID)
                v = md * (md * md - 4.0) / 48.0;  // ID-ST
            else
                v = md * md * md / 16.0;  // UN-ST, AN-ST
        }
        if (count_form) {
            if (n <= 0) unsupported("count form needs the number of voters");
            v *= static_cast<double>(n);
        }
        return v;
    }

    // swap and discrete hold for exact compass elections, i.e. when m!
    // divides n.
    if (m > 20) unsupported("m too large for the per-vote formulas");
    if (n <= 0) unsupported("swap/disc need the number of voters");
    long long mf = factorial(m);
    if (n % mf != 0) need(false, "n divisible by m!");
    if (has_st) need(m % 2 == 0, "even m");
    double nd = static_cast<double>(n);

    if (metric == CompassMetric::Swap) {
        if (p == q) return 0.0;
        if (q == CompassPoint::UN || (p == CompassPoint::ID && has_an))
            return nd * m * (m - 1) / 4.0;  // ID-UN, ID-AN
        if (p == CompassPoint::ID && q == CompassPoint::ST)
            return nd * (m * m - 2.0 * m) / 8.0;
        if (p == CompassPoint::UN && q == CompassPoint::ST)
            return nd * m * m / 8.0;
        unsupported(pair_name + " has no closed form for swap; use compass_swap_bounds");
    }

    // discrete
    if (p == q) return 0.0;
    double mfd = static_cast<double>(mf);
    double hf = static_cast<double>(factorial(m / 2)) * factorial(m / 2);
    if (p == CompassPoint::ID && q == CompassPoint::UN) return nd * (mfd - 1.0) / mfd;
    if (p == CompassPoint::ID && q == CompassPoint::AN) return nd / 2.0;
    if (p == CompassPoint::UN && q == CompassPoint::AN) return nd * (mfd - 2.0) / mfd;
    if (p == CompassPoint::UN && q == CompassPoint::ST) return nd * (mfd - hf) / mfd;
    return nd * (hf - 1.0) / hf;  // ID-ST and AN-ST share the formula
}

std::pair<double, double> compass_swap_bounds(int m, long long n) {
    if (m <= 1 || n <= 0)
        throw std::invalid_argument("compass_swap_bounds: need m > 1 and n > 0");
    double nd = static_cast<double>(n);
    return {nd * (static_cast<double>(m) * m - 3.0 * m + 2.0) / 8.0,
            nd * (static_cast<double>(m) * m - m) / 4.0};
}

}  // namespace votemap
