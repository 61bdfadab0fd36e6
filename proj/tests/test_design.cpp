#include "macc/design.hpp"
#include "macc/errors.hpp"
#include "macc/json_io.hpp"

#include <doctest.h>

using namespace macc;

namespace {

using Classes = std::vector<std::vector<Block>>;

void check_blocks(const Design& d, const Classes& expected) {
    REQUIRE(d.parallel_classes().size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(d.parallel_classes()[i] == expected[i]);
    }
}

}  // namespace

TEST_CASE("construct_mcrd m=3 b=2") {
    Design d = construct_mcrd(3, 2, 1);
    check_blocks(d, {{{1, 2, 3, 4}, {5, 6, 7, 8}},
                     {{1, 2, 5, 6}, {3, 4, 7, 8}},
                     {{1, 3, 5, 7}, {2, 4, 6, 8}}});
    VerificationReport r = verify_mcrd(d);
    CHECK(r.passed);
    CHECK(r.measured_mu == 1u);
}

TEST_CASE("construct_mcrd m=4 b=2") {
    Design d = construct_mcrd(4, 2, 1);
    check_blocks(d, {{{1, 2, 3, 4, 5, 6, 7, 8}, {9, 10, 11, 12, 13, 14, 15, 16}},
                     {{1, 2, 3, 4, 9, 10, 11, 12}, {5, 6, 7, 8, 13, 14, 15, 16}},
                     {{1, 2, 5, 6, 9, 10, 13, 14}, {3, 4, 7, 8, 11, 12, 15, 16}},
                     {{1, 3, 5, 7, 9, 11, 13, 15}, {2, 4, 6, 8, 10, 12, 14, 16}}});
    CHECK(verify_mcrd(d).measured_mu == 1u);
}

TEST_CASE("construct_mcrd m=3 b=3") {
    Design d = construct_mcrd(3, 3, 1);
    check_blocks(d, {{{1, 2, 3, 4, 5, 6, 7, 8, 9},
                      {10, 11, 12, 13, 14, 15, 16, 17, 18},
                      {19, 20, 21, 22, 23, 24, 25, 26, 27}},
                     {{1, 2, 3, 10, 11, 12, 19, 20, 21},
                      {4, 5, 6, 13, 14, 15, 22, 23, 24},
                      {7, 8, 9, 16, 17, 18, 25, 26, 27}},
                     {{1, 4, 7, 10, 13, 16, 19, 22, 25},
                      {2, 5, 8, 11, 14, 17, 20, 23, 26},
                      {3, 6, 9, 12, 15, 18, 21, 24, 27}}});
    CHECK(verify_mcrd(d).measured_mu == 1u);
}

TEST_CASE("construct_mcrd m=2 b=4") {
    Design d = construct_mcrd(2, 4, 1);
    check_blocks(d, {{{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}},
                     {{1, 5, 9, 13}, {2, 6, 10, 14}, {3, 7, 11, 15}, {4, 8, 12, 16}}});
    CHECK(verify_mcrd(d).measured_mu == 1u);
}

TEST_CASE("construct_mcrd m=3 b=2 mu=2") {
    Design d = construct_mcrd(3, 2, 2);
    check_blocks(d, {{{1, 2, 3, 4, 5, 6, 7, 8}, {9, 10, 11, 12, 13, 14, 15, 16}},
                     {{1, 2, 3, 4, 9, 10, 11, 12}, {5, 6, 7, 8, 13, 14, 15, 16}},
                     {{1, 2, 5, 6, 9, 10, 13, 14}, {3, 4, 7, 8, 11, 12, 15, 16}}});
    VerificationReport r = verify_mcrd(d);
    CHECK(r.passed);
    CHECK(r.measured_mu == 2u);
    CHECK(d.nominal_mu() == 2u);
    CHECK(r.block_size == 8u);
}

TEST_CASE("trivial design") {
    Design d = construct_mcrd(1, 1, 1);
    CHECK(d.point_count() == 1);
    CHECK(verify_mcrd(d).passed);
}

TEST_CASE("resolvable design that is not cross resolvable is rejected") {
    Design d(2, 4, 16,
             {{{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}},
              {{1, 2, 9, 13}, {5, 6, 10, 14}, {3, 7, 11, 15}, {4, 8, 12, 16}}});
    VerificationReport r = verify_mcrd(d);
    CHECK_FALSE(r.passed);
    CHECK(r.min_intersection == 0);
    CHECK(r.max_intersection == 2);
    CHECK_FALSE(r.measured_mu.has_value());
    CHECK(r.class_partitions == std::vector<bool>{true, true});
}

TEST_CASE("class that does not partition the points") {
    Design d(2, 2, 4, {{{1, 2}, {3, 4}}, {{1, 3}, {3, 4}}});
    VerificationReport r = verify_mcrd(d);
    CHECK_FALSE(r.passed);
    CHECK(r.class_partitions == std::vector<bool>{true, false});
    CHECK_FALSE(d.indexed());
    CHECK_THROWS_AS(d.block_containing(1, 1), InvariantError);
}

TEST_CASE("design constructor validation") {
    CHECK_THROWS_AS(Design(2, 2, 4, {{{1, 2}, {3, 4}}}), ArgumentError);
    CHECK_THROWS_AS(Design(1, 2, 4, {{{1, 2}, {3, 5}}}), ArgumentError);
    CHECK_THROWS_AS(Design(1, 2, 4, {{{1, 1}, {3, 4}}}), ArgumentError);
    CHECK_THROWS_AS(construct_mcrd(0, 2, 1), ArgumentError);
    CHECK_THROWS_AS(construct_mcrd(2, 2, 0), ArgumentError);
}

TEST_CASE("point budget") {
    CHECK_THROWS_AS(construct_mcrd(10, 10, 1), ResourceError);
    CHECK_THROWS_AS(construct_mcrd(2, 10, 2, 150), ResourceError);
    CHECK_NOTHROW(construct_mcrd(2, 10, 1, 100));
}

TEST_CASE("point_at and the membership index agree") {
    Design d = construct_mcrd(3, 4, 1);
    std::vector<int> coords = {2, 3, 4};
    auto literal = point_at(d, coords);
    REQUIRE(literal.size() == 1);
    auto indexed = d.points_of_tuple(coords);
    CHECK(std::vector<Point>(indexed.begin(), indexed.end()) == literal);
    // Column of residues (1,2,3) in base 4.
    CHECK(literal[0] == 1 * 16 + 2 * 4 + 3 + 1);
    for (int i = 1; i <= 3; ++i) {
        CHECK(d.block_containing(i, literal[0]) == coords[i - 1]);
    }
    CHECK_THROWS_AS(point_at(d, std::vector<int>{1, 2}), ArgumentError);
    CHECK_THROWS_AS(point_at(d, std::vector<int>{1, 2, 5}), ArgumentError);
}

TEST_CASE("every block is the union of its cross intersections") {
    for (auto [m, b] : {std::pair{2, 4}, {3, 3}, {2, 7}, {4, 2}}) {
        Design d = construct_mcrd(m, b, 1);
        for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= b; ++j) {
                CHECK(block_cover_check(d, i, j));
            }
        }
    }
}

TEST_CASE("exhaustive verification of constructed designs up to b^m = 1e4") {
    int designs = 0;
    for (int m = 1; m <= 13; ++m) {
        // b = 1 gives the same single tuple for every m.
        for (int b = m == 1 ? 1 : 2; b <= (m == 1 ? 200 : 100); ++b) {
            std::uint64_t tuples = 1;
            for (int k = 0; k < m; ++k) {
                tuples *= b;
            }
            if (tuples > 10000) {
                break;
            }
            for (int mu = 1; mu <= 2; ++mu) {
                Design d = construct_mcrd(m, b, mu);
                VerificationReport r = verify_mcrd(d);
                CHECK_MESSAGE(r.passed, "m=", m, " b=", b, " mu=", mu);
                CHECK(r.measured_mu == static_cast<std::uint64_t>(mu));
                CHECK(r.tuples_checked == tuples);
                CHECK(r.block_size == tuples / b * mu);
                ++designs;
            }
        }
    }
    CHECK(designs > 100);
}

TEST_CASE("design JSON round trip") {
    Design d = construct_mcrd(2, 3, 2);
    Json j = design_json(d);
    CHECK(j["mu"] == 2);
    Design back = design_from_json(j);
    CHECK(back.parallel_classes() == d.parallel_classes());
    CHECK(back.point_count() == d.point_count());
    CHECK_THROWS_AS(design_from_json(Json{{"m", 1}}), ArgumentError);
}
