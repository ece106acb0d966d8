#include "votemap/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace votemap {

AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("assignment: cost matrix must be square");

    const double inf = std::numeric_limits<double>::infinity();
    // Potentials-based Hungarian method, 1-indexed; p[j] is the row
    // currently assigned to column j, column 0 is the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    AssignmentResult result;
    result.row_to_col.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) result.row_to_col[p[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) result.cost += cost[i][result.row_to_col[i]];
    return result;
}

namespace {

bool kuhn_augment(int left, const std::vector<std::vector<int>>& adj,
                  std::vector<char>& visited, std::vector<int>& owner) {
    for (int right : adj[left]) {
        if (visited[right]) continue;
        visited[right] = 1;
        if (owner[right] < 0 || kuhn_augment(owner[right], adj, visited, owner)) {
            owner[right] = left;
            return true;
        }
    }
    return false;
}

}  // namespace

int max_bipartite_matching(const std::vector<std::vector<int>>& adjacency,
                           int num_right, std::vector<int>* match_left) {
    const int num_left = static_cast<int>(adjacency.size());
    std::vector<int> owner(num_right, -1);
    int matched = 0;
    for (int l = 0; l < num_left; ++l) {
        std::vector<char> visited(num_right, 0);
        if (kuhn_augment(l, adjacency, visited, owner)) ++matched;
    }
    if (match_left != nullptr) {
        match_left->assign(num_left, -1);
        for (int r = 0; r < num_right; ++r)
            if (owner[r] >= 0) (*match_left)[owner[r]] = r;
    }
    return matched;
}

}  // namespace votemap
