#pragma once

#include "macc/numeric.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace macc {

// c(group, index) or k(group, index); both coordinates 1-based.
struct NodeId {
    int group = 0;
    int index = 0;

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

using CacheId = NodeId;
using UserId = NodeId;

// Flat 1-based id (group-1)*b + index used by the JSON formats.
inline int flat_id(NodeId id, int b) { return (id.group - 1) * b + id.index; }
inline NodeId from_flat_id(int flat, int b) { return {(flat - 1) / b + 1, (flat - 1) % b + 1}; }

/**
 * User-to-cache association for K = m*b users and caches. Users are stored in
 * (i,j) row-major order; access(u) lists the caches user u reads, sorted.
 * The constructor only checks that ids are in range and not repeated; the
 * structural conditions are checked by validate().
 */
class Topology {
public:
    Topology(int m, int b, int z, std::vector<std::vector<CacheId>> access);

    int groups() const { return m_; }
    int group_size() const { return b_; }
    int access_degree() const { return z_; }
    int users() const { return m_ * b_; }

    const std::vector<CacheId>& access(UserId user) const;
    const std::vector<std::vector<CacheId>>& all_access() const { return access_; }

private:
    int m_;
    int b_;
    int z_;
    std::vector<std::vector<CacheId>> access_;
};

// Cell C_(i,l) containing cache index j (contiguous layout).
int cache_cell(int j, int b, int z);

// Size of cell l in 1..z.
int cell_size(int l, int b, int z);

// First cache index of cell l.
int cell_begin(int l, int b, int z);

struct ValidationReport {
    bool c1 = false;             // no edge crosses groups
    bool c2 = false;             // exactly one cache per cell for every user
    bool c2_at_most = false;     // at most one per cell (the weaker textual form)
    bool c3 = false;             // every group has a perfect matching
    std::vector<int> matching_sizes;  // per group, in-group edges only
    std::vector<std::string> issues;
    std::vector<std::string> warnings;

    bool passed() const { return c1 && c2 && c3; }
};

ValidationReport validate(const Topology& topology);

/**
 * Per-group bijection f_{M_i}: cache_of[i-1][j-1] is the cache index matched
 * to user k(i,j); user_of is its inverse.
 */
class MatchingAssignment {
public:
    MatchingAssignment() = default;
    explicit MatchingAssignment(std::vector<std::vector<int>> cache_of_user);

    int groups() const { return static_cast<int>(cache_of_.size()); }
    int cache_of(UserId user) const;
    int user_of(CacheId cache) const;
    const std::vector<std::vector<int>>& table() const { return cache_of_; }

private:
    std::vector<std::vector<int>> cache_of_;
    std::vector<std::vector<int>> user_of_;
};

// True when `matching` is a per-group bijection that only uses accessed caches.
bool is_valid_matching(const Topology& topology, const MatchingAssignment& matching);

// Deterministic perfect matching per group; throws ConditionError when C3 fails.
MatchingAssignment extract_matchings(const Topology& topology);

Topology canonical_topology(int m, int b, int z);

// Uniform per-cell cache choices; groups resampled until C3 holds.
Topology random_topology(int m, int b, int z, std::uint64_t seed, int max_attempts = 1000);

// Number of C1+C2 topologies: (floor(b/z)^(z-1) * last-cell size)^(b*m).
BigInt count_topologies(int m, int b, int z);

}  // namespace macc
