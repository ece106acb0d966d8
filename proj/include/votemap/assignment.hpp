#pragma once

#include <vector>

// Minimum-cost perfect assignment (Hungarian method with potentials,
// O(k^3)) and maximum-cardinality bipartite matching (Kuhn's algorithm).
// Both are deterministic: equal inputs give equal matchings.

namespace votemap {

struct AssignmentResult {
    double cost = 0.0;
    std::vector<int> row_to_col;
};

// cost must be square.  Returns the minimum total cost and one optimal
// row -> column assignment.
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost);

// adjacency[l] lists the right-side vertices reachable from left vertex l.
// Returns the size of a maximum matching; if match_left is non-null it
// receives the matched right vertex per left vertex (-1 when unmatched).
int max_bipartite_matching(const std::vector<std::vector<int>>& adjacency,
                           int num_right,
                           std::vector<int>* match_left = nullptr);

}  // namespace votemap
