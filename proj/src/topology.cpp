#include "macc/topology.hpp"

#include "macc/errors.hpp"
#include "macc/matching.hpp"
#include "rng.hpp"

#include <algorithm>
#include <set>

namespace macc {

namespace {

void check_shape(int m, int b, int z) {
    if (m < 1 || b < 1) {
        throw ArgumentError("topology needs m >= 1 and b >= 1");
    }
    if (z < 1 || z > b) {
        throw ArgumentError("access degree z=" + std::to_string(z) + " must lie in 1..b (b=" +
                            std::to_string(b) + ")");
    }
}

std::size_t user_slot(UserId user, int b) {
    return static_cast<std::size_t>((user.group - 1) * b + (user.index - 1));
}

// Perfect-matching search for one group using in-group edges only.
BipartiteMatcher group_matcher(const Topology& topology, int group) {
    const int b = topology.group_size();
    BipartiteMatcher matcher(b, b);
    for (int j = 1; j <= b; ++j) {
        for (CacheId c : topology.access({group, j})) {
            if (c.group == group) {
                matcher.add_edge(j - 1, c.index - 1);
            }
        }
    }
    matcher.solve();
    return matcher;
}

}  // namespace

Topology::Topology(int m, int b, int z, std::vector<std::vector<CacheId>> access)
    : m_(m), b_(b), z_(z), access_(std::move(access)) {
    check_shape(m, b, z);
    if (static_cast<int>(access_.size()) != m * b) {
        throw ArgumentError("expected access lists for " + std::to_string(m * b) + " users, got " +
                            std::to_string(access_.size()));
    }
    for (auto& caches : access_) {
        for (CacheId c : caches) {
            if (c.group < 1 || c.group > m || c.index < 1 || c.index > b) {
                throw ArgumentError("cache (" + std::to_string(c.group) + "," +
                                    std::to_string(c.index) + ") out of range");
            }
        }
        std::sort(caches.begin(), caches.end());
        if (std::adjacent_find(caches.begin(), caches.end()) != caches.end()) {
            throw ArgumentError("a user lists the same cache twice");
        }
    }
}

const std::vector<CacheId>& Topology::access(UserId user) const {
    if (user.group < 1 || user.group > m_ || user.index < 1 || user.index > b_) {
        throw ArgumentError("user (" + std::to_string(user.group) + "," +
                            std::to_string(user.index) + ") out of range");
    }
    return access_[user_slot(user, b_)];
}

int cache_cell(int j, int b, int z) {
    if (z < 1 || z > b) {
        throw ArgumentError("cache_cell needs 1 <= z <= b");
    }
    if (j < 1 || j > b) {
        throw ArgumentError("cache index " + std::to_string(j) + " outside 1.." +
                            std::to_string(b));
    }
    const int x = b / z;
    return std::min(static_cast<int>(ceil_div(j, x)), z);
}

int cell_size(int l, int b, int z) {
    if (z < 1 || z > b || l < 1 || l > z) {
        throw ArgumentError("cell_size argument out of range");
    }
    const int x = b / z;
    return l < z ? x : b - (z - 1) * x;
}

int cell_begin(int l, int b, int z) {
    if (z < 1 || z > b || l < 1 || l > z) {
        throw ArgumentError("cell_begin argument out of range");
    }
    return (l - 1) * (b / z) + 1;
}

ValidationReport validate(const Topology& topology) {
    ValidationReport report;
    const int m = topology.groups();
    const int b = topology.group_size();
    const int z = topology.access_degree();

    report.c1 = true;
    report.c2 = true;
    report.c2_at_most = true;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= b; ++j) {
            const auto& caches = topology.access({i, j});
            std::vector<int> per_cell(z + 1, 0);
            for (CacheId c : caches) {
                if (c.group != i) {
                    if (report.c1) {
                        report.issues.push_back("C1: user k(" + std::to_string(i) + "," +
                                                std::to_string(j) + ") reaches cache c(" +
                                                std::to_string(c.group) + "," +
                                                std::to_string(c.index) + ") in another group");
                    }
                    report.c1 = false;
                    continue;
                }
                ++per_cell[cache_cell(c.index, b, z)];
            }
            for (int l = 1; l <= z; ++l) {
                if (per_cell[l] > 1) {
                    report.c2_at_most = false;
                }
                if (per_cell[l] != 1) {
                    if (report.c2) {
                        report.issues.push_back("C2: user k(" + std::to_string(i) + "," +
                                                std::to_string(j) + ") has " +
                                                std::to_string(per_cell[l]) +
                                                " caches in cell " + std::to_string(l));
                    }
                    report.c2 = false;
                }
            }
        }
    }
    if (!report.c2 && report.c2_at_most) {
        report.warnings.push_back(
            "C2: every user has at most one cache per cell, but some cell is missing");
    }

    report.c3 = true;
    for (int i = 1; i <= m; ++i) {
        BipartiteMatcher matcher = group_matcher(topology, i);
        int size = static_cast<int>(std::count_if(matcher.match_of_left().begin(),
                                                  matcher.match_of_left().end(),
                                                  [](int v) { return v >= 0; }));
        report.matching_sizes.push_back(size);
        if (size != b) {
            report.c3 = false;
            report.issues.push_back("C3: group " + std::to_string(i) + " has maximum matching " +
                                    std::to_string(size) + " < " + std::to_string(b));
        }
    }
    return report;
}

MatchingAssignment::MatchingAssignment(std::vector<std::vector<int>> cache_of_user)
    : cache_of_(std::move(cache_of_user)) {
    user_of_.resize(cache_of_.size());
    for (std::size_t g = 0; g < cache_of_.size(); ++g) {
        const int b = static_cast<int>(cache_of_[g].size());
        user_of_[g].assign(b, 0);
        for (int j = 1; j <= b; ++j) {
            int c = cache_of_[g][j - 1];
            if (c < 1 || c > b || user_of_[g][c - 1] != 0) {
                throw ArgumentError("matching of group " + std::to_string(g + 1) +
                                    " is not a bijection");
            }
            user_of_[g][c - 1] = j;
        }
    }
}

int MatchingAssignment::cache_of(UserId user) const {
    return cache_of_.at(user.group - 1).at(user.index - 1);
}

int MatchingAssignment::user_of(CacheId cache) const {
    return user_of_.at(cache.group - 1).at(cache.index - 1);
}

bool is_valid_matching(const Topology& topology, const MatchingAssignment& matching) {
    const int m = topology.groups();
    const int b = topology.group_size();
    if (matching.groups() != m) {
        return false;
    }
    for (int i = 1; i <= m; ++i) {
        if (static_cast<int>(matching.table()[i - 1].size()) != b) {
            return false;
        }
        std::set<int> used;
        for (int j = 1; j <= b; ++j) {
            int c = matching.table()[i - 1][j - 1];
            const auto& caches = topology.access({i, j});
            if (std::find(caches.begin(), caches.end(), CacheId{i, c}) == caches.end()) {
                return false;
            }
            used.insert(c);
        }
        if (static_cast<int>(used.size()) != b) {
            return false;
        }
    }
    return true;
}

MatchingAssignment extract_matchings(const Topology& topology) {
    const int m = topology.groups();
    const int b = topology.group_size();
    std::vector<std::vector<int>> table(m, std::vector<int>(b, 0));
    for (int i = 1; i <= m; ++i) {
        BipartiteMatcher matcher = group_matcher(topology, i);
        for (int j = 0; j < b; ++j) {
            int c = matcher.match_of_left()[j];
            if (c < 0) {
                throw ConditionError("C3 violated: group " + std::to_string(i) +
                                     " has no perfect matching");
            }
            table[i - 1][j] = c + 1;
        }
    }
    return MatchingAssignment(std::move(table));
}

Topology canonical_topology(int m, int b, int z) {
    check_shape(m, b, z);
    std::vector<std::vector<CacheId>> access;
    access.reserve(static_cast<std::size_t>(m) * b);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= b; ++j) {
            std::vector<CacheId> caches;
            for (int l = 1; l <= z; ++l) {
                int size = cell_size(l, b, z);
                caches.push_back({i, cell_begin(l, b, z) + (j - 1) % size});
            }
            access.push_back(std::move(caches));
        }
    }
    return Topology(m, b, z, std::move(access));
}

Topology random_topology(int m, int b, int z, std::uint64_t seed, int max_attempts) {
    check_shape(m, b, z);
    if (max_attempts < 1) {
        throw ArgumentError("max_attempts must be positive");
    }
    SplitMix64 rng(seed);
    std::vector<std::vector<CacheId>> access(static_cast<std::size_t>(m) * b);
    for (int i = 1; i <= m; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < max_attempts && !ok; ++attempt) {
            BipartiteMatcher matcher(b, b);
            for (int j = 1; j <= b; ++j) {
                auto& caches = access[user_slot({i, j}, b)];
                caches.clear();
                for (int l = 1; l <= z; ++l) {
                    int offset = static_cast<int>(rng.below(cell_size(l, b, z)));
                    int c = cell_begin(l, b, z) + offset;
                    caches.push_back({i, c});
                    matcher.add_edge(j - 1, c - 1);
                }
            }
            ok = matcher.solve() == b;
        }
        if (!ok) {
            throw GenerationError("no perfect matching for group " + std::to_string(i) + " after " +
                                  std::to_string(max_attempts) + " attempts");
        }
    }
    return Topology(m, b, z, std::move(access));
}

BigInt count_topologies(int m, int b, int z) {
    check_shape(m, b, z);
    const int x = b / z;
    BigInt per_user = big_pow(x, z - 1) * (b - (z - 1) * x);
    BigInt result = 1;
    for (int k = 0; k < b * m; ++k) {
        result *= per_user;
    }
    return result;
}

}  // namespace macc
