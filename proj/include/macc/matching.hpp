#pragma once

#include <vector>

namespace macc {

/**
 * Maximum bipartite matching on left vertices 0..left-1 and right vertices
 * 0..right-1 by augmenting paths.
 *
 * Deterministic: a greedy pass first gives each left vertex (ascending) its
 * lowest free neighbour, then every still-free left vertex searches for an
 * augmenting path visiting neighbours in ascending order.
 */
class BipartiteMatcher {
public:
    BipartiteMatcher(int left, int right);

    void add_edge(int u, int v);

    // Returns the matching size; match_of_left()[u] is -1 when u is unmatched.
    int solve();

    const std::vector<int>& match_of_left() const { return match_left_; }
    const std::vector<int>& match_of_right() const { return match_right_; }

private:
    bool augment(int u, std::vector<char>& visited);

    int left_;
    int right_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
};

}  // namespace macc
