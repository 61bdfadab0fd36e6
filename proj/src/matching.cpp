#include "macc/matching.hpp"

#include "macc/errors.hpp"

#include <algorithm>
#include <string>

namespace macc {

BipartiteMatcher::BipartiteMatcher(int left, int right)
    : left_(left), right_(right), adjacency_(left), match_left_(left, -1), match_right_(right, -1) {
    if (left < 0 || right < 0) {
        throw ArgumentError("negative vertex count");
    }
}

void BipartiteMatcher::add_edge(int u, int v) {
    if (u < 0 || u >= left_ || v < 0 || v >= right_) {
        throw ArgumentError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") out of bounds");
    }
    adjacency_[u].push_back(v);
}

int BipartiteMatcher::solve() {
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    std::fill(match_left_.begin(), match_left_.end(), -1);
    std::fill(match_right_.begin(), match_right_.end(), -1);

    int size = 0;
    for (int u = 0; u < left_; ++u) {
        for (int v : adjacency_[u]) {
            if (match_right_[v] < 0) {
                match_left_[u] = v;
                match_right_[v] = u;
                ++size;
                break;
            }
        }
    }
    std::vector<char> visited(right_);
    for (int u = 0; u < left_; ++u) {
        if (match_left_[u] >= 0) {
            continue;
        }
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(u, visited)) {
            ++size;
        }
    }
    return size;
}

bool BipartiteMatcher::augment(int u, std::vector<char>& visited) {
    for (int v : adjacency_[u]) {
        if (visited[v]) {
            continue;
        }
        visited[v] = 1;
        if (match_right_[v] < 0 || augment(match_right_[v], visited)) {
            match_left_[u] = v;
            match_right_[v] = u;
            return true;
        }
    }
    return false;
}

}  // namespace macc
