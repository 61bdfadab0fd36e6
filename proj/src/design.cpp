#include "macc/design.hpp"

#include "macc/errors.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

namespace macc {

namespace {

std::uint64_t tuple_space(int m, int b) {
    // Tuples are enumerated explicitly (verification, tuple index).
    return checked_pow(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(m),
                       10 * kDefaultPointBudget);
}

void check_coords(const Design& design, std::span<const int> coords) {
    if (static_cast<int>(coords.size()) != design.classes()) {
        throw ArgumentError("expected " + std::to_string(design.classes()) + " coordinates, got " +
                            std::to_string(coords.size()));
    }
    for (int c : coords) {
        if (c < 1 || c > design.blocks_per_class()) {
            throw ArgumentError("block coordinate " + std::to_string(c) + " outside 1.." +
                                std::to_string(design.blocks_per_class()));
        }
    }
}

// Advances a 1-based odometer; returns false after the last tuple.
bool next_tuple(std::vector<int>& coords, int b, int skip = -1) {
    for (int i = static_cast<int>(coords.size()) - 1; i >= 0; --i) {
        if (i == skip) {
            continue;
        }
        if (coords[i] < b) {
            ++coords[i];
            return true;
        }
        coords[i] = 1;
    }
    return false;
}

}  // namespace

Design::Design(int m, int b, std::uint64_t point_count, std::vector<std::vector<Block>> classes)
    : m_(m), b_(b), point_count_(point_count), classes_(std::move(classes)) {
    if (m < 1 || b < 1) {
        throw ArgumentError("design needs m >= 1 and b >= 1");
    }
    if (point_count == 0 || point_count > std::numeric_limits<Point>::max()) {
        throw ArgumentError("point count out of range");
    }
    if (static_cast<int>(classes_.size()) != m) {
        throw ArgumentError("expected " + std::to_string(m) + " parallel classes, got " +
                            std::to_string(classes_.size()));
    }
    for (auto& cls : classes_) {
        if (static_cast<int>(cls.size()) != b) {
            throw ArgumentError("every parallel class needs " + std::to_string(b) + " blocks");
        }
        for (auto& block : cls) {
            std::sort(block.begin(), block.end());
            if (std::adjacent_find(block.begin(), block.end()) != block.end()) {
                throw ArgumentError("block lists a point twice");
            }
            if (!block.empty() && (block.front() < 1 || block.back() > point_count)) {
                throw ArgumentError("block point outside 1.." + std::to_string(point_count));
            }
        }
    }
    tuple_count_ = tuple_space(m, b);
    build_index();
}

std::optional<std::uint64_t> Design::nominal_mu() const {
    if (point_count_ % tuple_count_ != 0) {
        return std::nullopt;
    }
    return point_count_ / tuple_count_;
}

const Block& Design::block(int i, int j) const {
    if (i < 1 || i > m_ || j < 1 || j > b_) {
        throw ArgumentError("block (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range");
    }
    return classes_[i - 1][j - 1];
}

void Design::build_index() {
    radix_.assign(m_, 1);
    for (int i = m_ - 2; i >= 0; --i) {
        radix_[i] = radix_[i + 1] * static_cast<std::uint64_t>(b_);
    }

    std::vector<std::uint64_t> tuple(point_count_, 0);
    std::vector<std::uint32_t> hits(point_count_, 0);
    for (int i = 0; i < m_; ++i) {
        std::fill(hits.begin(), hits.end(), 0);
        for (int j = 0; j < b_; ++j) {
            for (Point p : classes_[i][j]) {
                ++hits[p - 1];
                tuple[p - 1] += static_cast<std::uint64_t>(j) * radix_[i];
            }
        }
        if (std::any_of(hits.begin(), hits.end(), [](std::uint32_t h) { return h != 1; })) {
            indexed_ = false;
            point_tuple_.clear();
            return;
        }
    }
    point_tuple_ = std::move(tuple);

    tuple_offsets_.assign(tuple_count_ + 1, 0);
    for (std::uint64_t t : point_tuple_) {
        ++tuple_offsets_[t + 1];
    }
    for (std::uint64_t t = 0; t < tuple_count_; ++t) {
        tuple_offsets_[t + 1] += tuple_offsets_[t];
    }
    tuple_points_.assign(point_count_, 0);
    std::vector<std::uint64_t> cursor(tuple_offsets_.begin(), tuple_offsets_.end() - 1);
    for (std::uint64_t p = 0; p < point_count_; ++p) {
        tuple_points_[cursor[point_tuple_[p]]++] = static_cast<Point>(p + 1);
    }
    indexed_ = true;
}

int Design::block_containing(int i, Point p) const {
    if (!indexed_) {
        throw InvariantError("block_containing needs a design whose classes partition the points");
    }
    if (i < 1 || i > m_ || p < 1 || p > point_count_) {
        throw ArgumentError("block_containing argument out of range");
    }
    return static_cast<int>((point_tuple_[p - 1] / radix_[i - 1]) % b_) + 1;
}

std::uint64_t Design::tuple_index(std::span<const int> coords) const {
    check_coords(*this, coords);
    std::uint64_t index = 0;
    for (int i = 0; i < m_; ++i) {
        index += static_cast<std::uint64_t>(coords[i] - 1) * radix_[i];
    }
    return index;
}

std::span<const Point> Design::points_of_tuple(std::span<const int> coords) const {
    if (!indexed_) {
        throw InvariantError("points_of_tuple needs a design whose classes partition the points");
    }
    std::uint64_t t = tuple_index(coords);
    return {tuple_points_.data() + tuple_offsets_[t], tuple_offsets_[t + 1] - tuple_offsets_[t]};
}

Design construct_mcrd(int m, int b, int mu, std::uint64_t point_budget) {
    if (m < 1 || b < 1 || mu < 1) {
        throw ArgumentError("construct_mcrd needs m, b, mu >= 1 (got m=" + std::to_string(m) +
                            ", b=" + std::to_string(b) + ", mu=" + std::to_string(mu) + ")");
    }
    std::uint64_t tuples = checked_pow(static_cast<std::uint64_t>(b),
                                       static_cast<std::uint64_t>(m), point_budget);
    if (tuples > point_budget / static_cast<std::uint64_t>(mu)) {
        throw ResourceError("mu*b^m exceeds point budget " + std::to_string(point_budget));
    }
    std::uint64_t points = tuples * static_cast<std::uint64_t>(mu);

    std::vector<std::vector<Block>> classes(m, std::vector<Block>(b));
    for (auto& cls : classes) {
        for (auto& block : cls) {
            block.reserve(points / b);
        }
    }
    // Column c (0-based) holds residue vector c / mu written in base b, row 1 first.
    std::vector<int> digits(m, 0);
    for (std::uint64_t v = 0; v < tuples; ++v) {
        for (int r = 0; r < mu; ++r) {
            Point column = static_cast<Point>(v * mu + r + 1);
            for (int i = 0; i < m; ++i) {
                classes[i][digits[i]].push_back(column);
            }
        }
        for (int i = m - 1; i >= 0; --i) {
            if (++digits[i] < b) {
                break;
            }
            digits[i] = 0;
        }
    }
    return Design(m, b, points, std::move(classes));
}

VerificationReport verify_mcrd(const Design& design) {
    VerificationReport report;
    const int m = design.classes();
    const int b = design.blocks_per_class();
    const std::uint64_t n = design.point_count();

    std::vector<std::uint32_t> hits(n);
    for (int i = 1; i <= m; ++i) {
        std::fill(hits.begin(), hits.end(), 0);
        for (int j = 1; j <= b; ++j) {
            for (Point p : design.block(i, j)) {
                ++hits[p - 1];
            }
        }
        bool partitions =
            std::all_of(hits.begin(), hits.end(), [](std::uint32_t h) { return h == 1; });
        report.class_partitions.push_back(partitions);
        if (!partitions) {
            report.issues.push_back("class " + std::to_string(i) + " does not partition the points");
        }
    }

    std::uint64_t size = design.block(1, 1).size();
    report.uniform_block_size = true;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= b; ++j) {
            if (design.block(i, j).size() != size) {
                report.uniform_block_size = false;
            }
        }
    }
    if (report.uniform_block_size) {
        report.block_size = size;
    } else {
        report.issues.push_back("blocks differ in size");
    }

    std::vector<int> coords(m, 1);
    bool first = true;
    do {
        std::uint64_t count = point_at(design, coords).size();
        if (first) {
            report.min_intersection = report.max_intersection = count;
            first = false;
        } else {
            report.min_intersection = std::min(report.min_intersection, count);
            report.max_intersection = std::max(report.max_intersection, count);
        }
        ++report.tuples_checked;
    } while (next_tuple(coords, b));

    if (report.min_intersection != report.max_intersection) {
        report.issues.push_back("cross intersections vary between " +
                                std::to_string(report.min_intersection) + " and " +
                                std::to_string(report.max_intersection));
    } else if (report.min_intersection == 0) {
        report.issues.push_back("cross intersections are empty");
    } else {
        report.measured_mu = report.min_intersection;
    }

    bool all_partition = std::all_of(report.class_partitions.begin(),
                                     report.class_partitions.end(), [](bool v) { return v; });
    report.passed = all_partition && report.uniform_block_size && report.measured_mu.has_value();
    return report;
}

std::vector<Point> point_at(const Design& design, std::span<const int> coords) {
    check_coords(design, coords);
    std::vector<Point> current = design.block(1, coords[0]);
    std::vector<Point> next;
    for (int i = 2; i <= design.classes() && !current.empty(); ++i) {
        const Block& other = design.block(i, coords[i - 1]);
        next.clear();
        std::set_intersection(current.begin(), current.end(), other.begin(), other.end(),
                              std::back_inserter(next));
        current.swap(next);
    }
    return current;
}

bool block_cover_check(const Design& design, int i, int j) {
    const int m = design.classes();
    const int b = design.blocks_per_class();
    if (i < 1 || i > m || j < 1 || j > b) {
        throw ArgumentError("block_cover_check index out of range");
    }
    std::vector<int> coords(m, 1);
    coords[i - 1] = j;
    std::vector<Point> covered;
    do {
        auto pts = point_at(design, coords);
        covered.insert(covered.end(), pts.begin(), pts.end());
    } while (next_tuple(coords, b, i - 1));
    std::sort(covered.begin(), covered.end());
    covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    return covered == design.block(i, j);
}

}  // namespace macc
