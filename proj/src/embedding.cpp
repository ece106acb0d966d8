#include "votemap/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace votemap {

namespace {

using Matrix = std::vector<std::vector<double>>;

double hypot2(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

double max_distance(const DistanceMatrix& d) {
    double mx = 0.0;
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) mx = std::max(mx, d.at(i, j));
    return mx;
}

// Gauss-Jordan inverse; the matrices fed here are symmetric positive
// definite (V plus a rank-one all-ones shift), so plain partial pivoting is
// enough.
Matrix inverse(Matrix a) {
    int k = static_cast<int>(a.size());
    Matrix inv(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        double p = a[col][col];
        if (std::abs(p) < 1e-300) throw std::runtime_error("embedding: singular system");
        for (int c = 0; c < k; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < k; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

double weighted_stress(const std::vector<MapPoint>& pts, const DistanceMatrix& d,
                       const Matrix& w) {
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            double e = hypot2(pts[i].x - pts[j].x, pts[i].y - pts[j].y) - d.at(i, j);
            s += w[i][j] * e * e;
        }
    return s;
}

// One Guttman transform: X <- pinv(V) * B(X) * X.  pinv_shift is the
// precomputed inverse of V plus the all-ones matrix, which acts as the
// pseudo-inverse on the centered vectors produced by B.
std::vector<MapPoint> smacof_step(const std::vector<MapPoint>& pts,
                                  const DistanceMatrix& d, const Matrix& w,
                                  const Matrix& pinv_shift) {
    int k = d.size();
    Matrix b(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            double dist = hypot2(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
            double v = dist > 1e-12 ? -w[i][j] * d.at(i, j) / dist : 0.0;
            b[i][j] = v;
            b[i][i] -= v;
        }
    }
    // Y = B X, then X' = pinv * Y, coordinate by coordinate
    std::vector<MapPoint> next(k);
    std::vector<double> yx(k, 0.0), yy(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            yx[i] += b[i][j] * pts[j].x;
            yy[i] += b[i][j] * pts[j].y;
        }
    for (int i = 0; i < k; ++i) {
        double nx = 0.0, ny = 0.0;
        for (int j = 0; j < k; ++j) {
            nx += pinv_shift[i][j] * yx[j];
            ny += pinv_shift[i][j] * yy[j];
        }
        next[i] = {nx, ny};
    }
    return next;
}

std::vector<MapPoint> run_smacof(std::vector<MapPoint> pts, const DistanceMatrix& d,
                                 const Matrix& w, const Matrix& pinv_shift,
                                 int max_iterations, double* final_stress) {
    double stress = weighted_stress(pts, d, w);
    for (int it = 0; it < max_iterations; ++it) {
        auto next = smacof_step(pts, d, w, pinv_shift);
        double ns = weighted_stress(next, d, w);
        if (ns <= stress) pts = std::move(next);
        if (stress - ns < 1e-12 * (1.0 + stress)) {
            stress = std::min(stress, ns);
            break;
        }
        stress = ns;
    }
    *final_stress = stress;
    return pts;
}

Matrix smacof_weights(const DistanceMatrix& d) {
    int k = d.size();
    Matrix w(k, std::vector<double>(k, 0.0));
    double wmax = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && d.at(i, j) > 1e-12)
                wmax = std::max(wmax, 1.0 / (d.at(i, j) * d.at(i, j)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            double dij = d.at(i, j);
            // coincident items get the strongest pull present in the data
            w[i][j] = dij > 1e-12 ? 1.0 / (dij * dij) : wmax;
        }
    return w;
}

Matrix pseudo_inverse_shift(const Matrix& w) {
    int k = static_cast<int>(w.size());
    Matrix v(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            v[i][j] = -w[i][j];
            v[i][i] += w[i][j];
        }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) v[i][j] += 1.0;
    return inverse(v);
}

// Classical scaling: double-center the squared distances and take the top
// two eigenpairs, by power iteration with deflation.  Deterministic start
// vectors keep the whole MDS pipeline seed-free.
std::vector<MapPoint> torgerson_init(const DistanceMatrix& d) {
    int k = d.size();
    Matrix b(k, std::vector<double>(k, 0.0));
    std::vector<double> rowmean(k, 0.0);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            double sq = d.at(i, j) * d.at(i, j);
            b[i][j] = sq;
            rowmean[i] += sq / k;
            total += sq / (static_cast<double>(k) * k);
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            b[i][j] = -0.5 * (b[i][j] - rowmean[i] - rowmean[j] + total);

    std::vector<MapPoint> pts(k);
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<double> vec(k);
        for (int i = 0; i < k; ++i) vec[i] = std::sin(static_cast<double>(i + 1 + axis));
        double lambda = 0.0;
        for (int it = 0; it < 500; ++it) {
            std::vector<double> nv(k, 0.0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) nv[i] += b[i][j] * vec[j];
            double norm = 0.0;
            for (double x : nv) norm += x * x;
            norm = std::sqrt(norm);
            if (norm < 1e-300) break;
            for (auto& x : nv) x /= norm;
            lambda = norm;
            vec = std::move(nv);
        }
        // recompute the Rayleigh quotient to get a signed eigenvalue
        double quad = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) quad += vec[i] * b[i][j] * vec[j];
        lambda = quad;
        double scale = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
        for (int i = 0; i < k; ++i) {
            double coord = vec[i] * scale;
            if (axis == 0) pts[i].x = coord;
            else pts[i].y = coord;
        }
        // deflate
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) b[i][j] -= lambda * vec[i] * vec[j];
    }
    return pts;
}

void validate(const DistanceMatrix& d) {
    int k = d.size();
    if (static_cast<int>(d.d.size()) != k)
        throw std::invalid_argument("embedding: malformed distance matrix");
    for (const auto& row : d.d)
        if (static_cast<int>(row.size()) != k)
            throw std::invalid_argument("embedding: malformed distance matrix");
}

}  // namespace

double Embedding::embedded_distance(int i, int j) const {
    return hypot2(points[i].x - points[j].x, points[i].y - points[j].y);
}

Embedding embed_kamada_kawai(const DistanceMatrix& d, int restarts, Rng& rng) {
    validate(d);
    if (restarts < 1) throw std::invalid_argument("embed_kamada_kawai: restarts must be >= 1");
    Embedding e;
    e.labels = d.labels;
    e.source = d;
    e.algorithm = "kk(restarts=" + std::to_string(restarts) + ")";
    int k = d.size();
    e.points.assign(k, MapPoint{});
    if (k <= 1) return e;

    Matrix w = smacof_weights(d);
    Matrix pinv = pseudo_inverse_shift(w);
    double span = std::max(max_distance(d), 1e-9);

    double best_stress = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::vector<MapPoint> pts(k);
        for (auto& p : pts) {
            p.x = (rng.next_double() - 0.5) * span;
            p.y = (rng.next_double() - 0.5) * span;
        }
        double stress = 0.0;
        pts = run_smacof(std::move(pts), d, w, pinv, 500, &stress);
        if (stress < best_stress) {
            best_stress = stress;
            e.points = std::move(pts);
        }
    }
    e.stress = best_stress;
    return e;
}

Embedding embed_fruchterman_reingold(const DistanceMatrix& d, int iterations, Rng& rng) {
    validate(d);
    if (iterations < 1)
        throw std::invalid_argument("embed_fruchterman_reingold: iterations must be >= 1");
    Embedding e;
    e.labels = d.labels;
    e.source = d;
    e.algorithm = "fr(iterations=" + std::to_string(iterations) + ")";
    int k = d.size();
    e.points.assign(k, MapPoint{});
    if (k <= 1) return e;

    // ideal edge lengths proportional to the distances, in a unit layout
    double dmax = std::max(max_distance(d), 1e-9);
    Matrix len(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) len[i][j] = std::max(d.at(i, j) / dmax, 1e-3);

    std::vector<MapPoint> pts(k);
    for (auto& p : pts) {
        p.x = rng.next_double() - 0.5;
        p.y = rng.next_double() - 0.5;
    }

    const double t0 = 0.1;
    for (int it = 0; it < iterations; ++it) {
        double t = t0 * (1.0 - static_cast<double>(it) / iterations);
        std::vector<MapPoint> disp(k, MapPoint{});
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
                double dist = hypot2(dx, dy);
                if (dist < 1e-9) {
                    // nudge coincident points apart, deterministically
                    dx = (rng.next_double() - 0.5) * 1e-3;
                    dy = (rng.next_double() - 0.5) * 1e-3;
                    dist = hypot2(dx, dy);
                    if (dist < 1e-12) continue;
                }
                double l = len[i][j];
                double f = l * l / dist - dist * dist / l;  // repulse minus attract
                disp[i].x += dx / dist * f;
                disp[i].y += dy / dist * f;
            }
        }
        for (int i = 0; i < k; ++i) {
            double mag = hypot2(disp[i].x, disp[i].y);
            if (mag < 1e-12) continue;
            double step = std::min(mag, t);
            pts[i].x += disp[i].x / mag * step;
            pts[i].y += disp[i].y / mag * step;
        }
    }

    // report the scale-matched unweighted stress for reference
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            num += hypot2(pts[i].x - pts[j].x, pts[i].y - pts[j].y) * d.at(i, j);
            den += d.at(i, j) * d.at(i, j);
        }
    double scale = den > 0.0 ? num / den : 1.0;
    double stress = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double err = hypot2(pts[i].x - pts[j].x, pts[i].y - pts[j].y) -
                         scale * d.at(i, j);
            stress += err * err;
        }
    e.points = std::move(pts);
    e.stress = stress;
    return e;
}

Embedding embed_mds_smacof(const DistanceMatrix& d, int iterations) {
    validate(d);
    if (iterations < 0)
        throw std::invalid_argument("embed_mds_smacof: iterations must be >= 0");
    Embedding e;
    e.labels = d.labels;
    e.source = d;
    e.algorithm = "mds(iterations=" + std::to_string(iterations) + ")";
    int k = d.size();
    e.points.assign(k, MapPoint{});
    if (k <= 1) return e;

    Matrix w(k, std::vector<double>(k, 1.0));
    for (int i = 0; i < k; ++i) w[i][i] = 0.0;
    Matrix pinv = pseudo_inverse_shift(w);
    double stress = 0.0;
    e.points = run_smacof(torgerson_init(d), d, w, pinv, iterations, &stress);
    e.stress = stress;
    return e;
}

MonotonicityReport monotonicity(const Embedding& q, double eps) {
    if (eps < 0.0) throw std::invalid_argument("monotonicity: eps must be >= 0");
    int k = static_cast<int>(q.points.size());
    MonotonicityReport r;
    r.per_item.assign(k, 1.0);
    if (k >= 3) {
        for (int x = 0; x < k; ++x) {
            long long good = 0, all = 0;
            for (int y = 0; y < k; ++y) {
                if (y == x) continue;
                for (int z = 0; z < k; ++z) {
                    if (z == x || z == y) continue;
                    ++all;
                    double em_y = q.embedded_distance(x, y), em_z = q.embedded_distance(x, z);
                    double so_y = q.source.at(x, y), so_z = q.source.at(x, z);
                    int se = em_y > em_z ? 1 : (em_y < em_z ? -1 : 0);
                    int sm = so_y > so_z ? 1 : (so_y < so_z ? -1 : 0);
                    if (se == sm || std::abs(em_y - em_z) <= eps * std::min(em_y, em_z))
                        ++good;
                }
            }
            r.per_item[x] = static_cast<double>(good) / static_cast<double>(all);
        }
    }
    double sum = 0.0;
    for (double v : r.per_item) sum += v;
    r.mean = k > 0 ? sum / k : 1.0;
    return r;
}

DistortionReport distortion(const Embedding& q) {
    int k = static_cast<int>(q.points.size());
    DistortionReport r;
    r.per_item.assign(k, 1.0);

    // normalization constants for both spaces
    int id = -1, un = -1;
    for (int i = 0; i < k; ++i) {
        if (q.labels[i] == "ID") id = i;
        if (q.labels[i] == "UN") un = i;
    }
    double cm = 0.0, ce = 0.0;
    if (id >= 0 && un >= 0 && q.source.at(id, un) > 0.0 &&
        q.embedded_distance(id, un) > 0.0) {
        cm = q.source.at(id, un);
        ce = q.embedded_distance(id, un);
        r.normalization = "ID-UN";
    } else {
        cm = max_distance(q.source);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) ce = std::max(ce, q.embedded_distance(i, j));
        r.normalization = "max";
    }
    if (cm <= 0.0 || ce <= 0.0) {
        // all distances zero in some space; every pair is either perfect or
        // meaningless, call it 1
        r.mean = 1.0;
        return r;
    }

    const double inf = std::numeric_limits<double>::infinity();
    for (int x = 0; x < k; ++x) {
        if (k < 2) break;
        double sum = 0.0;
        for (int y = 0; y < k; ++y) {
            if (y == x) continue;
            double a = q.source.at(x, y) / cm;
            double b = q.embedded_distance(x, y) / ce;
            double mr;
            if (a == 0.0 && b == 0.0) mr = 1.0;
            else if (a == 0.0 || b == 0.0) mr = inf;
            else mr = std::max(a, b) / std::min(a, b);
            sum += mr;
        }
        r.per_item[x] = sum / (k - 1);
    }
    double sum = 0.0;
    for (double v : r.per_item) sum += v;
    r.mean = k > 0 ? sum / k : 1.0;
    return r;
}

}  // namespace votemap
