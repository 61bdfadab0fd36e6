#pragma once

#include "macc/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace macc {

using Point = std::uint32_t;
using Block = std::vector<Point>;

inline constexpr std::uint64_t kDefaultPointBudget = 1'000'000;

/**
 * A resolvable design given as m parallel classes of b blocks each over the
 * points {1..point_count}. Block B(i,j) is addressed 1-based.
 *
 * When every class partitions the point set the design also keeps a
 * membership index (point -> block per class, block tuple -> points) used by
 * point_at() and the caching engine. Designs whose classes are not partitions
 * are still representable so that verify_mcrd() can reject them.
 */
class Design {
public:
    Design(int m, int b, std::uint64_t point_count, std::vector<std::vector<Block>> classes);

    int classes() const { return m_; }
    int blocks_per_class() const { return b_; }
    std::uint64_t point_count() const { return point_count_; }

    // Number of tuples b^m.
    std::uint64_t tuple_count() const { return tuple_count_; }

    // point_count / b^m when that division is exact, otherwise nullopt.
    std::optional<std::uint64_t> nominal_mu() const;

    const Block& block(int i, int j) const;
    const std::vector<std::vector<Block>>& parallel_classes() const { return classes_; }

    // True when every class partitions the point set; the membership index exists.
    bool indexed() const { return indexed_; }

    // Index of the block of class i that contains `p`. Requires indexed().
    int block_containing(int i, Point p) const;

    // Points whose block coordinates equal `coords` (sorted). Requires indexed().
    std::span<const Point> points_of_tuple(std::span<const int> coords) const;

    std::uint64_t tuple_index(std::span<const int> coords) const;

private:
    void build_index();

    int m_;
    int b_;
    std::uint64_t point_count_;
    std::uint64_t tuple_count_;
    std::vector<std::vector<Block>> classes_;

    bool indexed_ = false;
    // point_tuple_[p-1] = mixed-radix tuple index of point p (row 1 most significant)
    std::vector<std::uint64_t> point_tuple_;
    std::vector<std::uint64_t> radix_;  // radix_[i] = b^(m-1-i)
    // CSR: tuple -> points
    std::vector<std::uint64_t> tuple_offsets_;
    std::vector<Point> tuple_points_;
};

/**
 * Builds the design from the m x (mu*b^m) matrix whose columns are all
 * residue vectors mod b in lexicographic order (row 1 most significant), each
 * repeated mu times contiguously. B(i,l+1) is the set of column indices whose
 * row-i entry is l.
 */
Design construct_mcrd(int m, int b, int mu, std::uint64_t point_budget = kDefaultPointBudget);

struct VerificationReport {
    std::vector<bool> class_partitions;  // per class
    bool uniform_block_size = false;
    std::uint64_t block_size = 0;        // valid when uniform_block_size
    std::uint64_t min_intersection = 0;
    std::uint64_t max_intersection = 0;
    std::optional<std::uint64_t> measured_mu;  // set iff intersections constant and positive
    std::uint64_t tuples_checked = 0;
    bool passed = false;
    std::vector<std::string> issues;
};

// Exhaustive check: intersects every one of the b^m block tuples directly.
VerificationReport verify_mcrd(const Design& design);

// Sorted intersection of B(1,coords[0]) .. B(m,coords[m-1]).
std::vector<Point> point_at(const Design& design, std::span<const int> coords);

// Union of point_at over all tuples with coordinate i fixed at j equals B(i,j).
bool block_cover_check(const Design& design, int i, int j);

}  // namespace macc
