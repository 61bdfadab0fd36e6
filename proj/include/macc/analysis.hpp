#pragma once

#include "macc/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace macc {

enum class Scheme { ours, spe, rk, nt, sicps, sr1, sr2, mr };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

// (M/N, R) pair. For our scheme `m`, `b`, `t` record the corner's parameters;
// rivals set only `t` (their t-parameter). Zeros mean "not applicable".
struct RatePoint {
    Rational memory;
    Rational rate;
    Scheme scheme = Scheme::ours;
    int m = 0;
    int b = 0;
    int t = 0;
};

// Every (t/b, R) for divisor pairs m*b = K with b >= z and t = 1 up to the
// first t giving rate 0. Not filtered.
std::vector<RatePoint> all_corner_points(int K, int z);

// all_corner_points with duplicates and dominated points removed, sorted by memory.
std::vector<RatePoint> our_corner_points(int K, int z);

/**
 * Lower convex envelope in the memory-rate plane, evaluated by linear
 * interpolation. Vertices after the first zero-rate vertex are dropped.
 */
class Curve {
public:
    Curve() = default;
    explicit Curve(std::vector<RatePoint> vertices);

    const std::vector<RatePoint>& vertices() const { return vertices_; }

    // Throws ArgumentError for memory below the first vertex. Beyond the last
    // vertex the last rate is returned.
    Rational evaluate(const Rational& memory) const;

private:
    std::vector<RatePoint> vertices_;
};

Curve envelope(std::vector<RatePoint> points);

// Envelope of our_corner_points(K, z) plus the no-cache point (0, K).
Curve our_envelope(int K, int z);

// Rate at the integer t-parameter (t' for RK/NT/SICPS, t'' for SR1/SR2, ignored for MR).
// Throws ApplicabilityError naming the failed condition.
Rational rival_rate(Scheme scheme, int K, int z, int t);

// SR1 rate by the exact half-range sum with ceilings.
Rational sr1_rate(int K, int z, int t2);

// Exact subpacketization, or an interval when only bounds are known (SR1).
struct Subpacketization {
    BigInt low;
    BigInt high;
    bool exact() const { return low == high; }
};

Subpacketization rival_subpacketization(Scheme scheme, int K, int z, int t);

// Applicable integer points of a rival (plus trivial endpoints), by memory.
std::vector<RatePoint> rival_points(Scheme scheme, int K, int z);

// Rival rate at arbitrary memory by linear interpolation between adjacent
// points. nullopt for schemes whose rate formula is external (SPE, SICPS).
std::optional<Rational> rival_rate_at(Scheme scheme, int K, int z, const Rational& memory);

struct LemmaOutcome {
    std::string name;
    bool applicable = false;   // side conditions hold
    bool satisfied = false;    // the lemma's memory/size condition holds
    bool confirmed = false;    // direct comparison agrees with the conclusion
    Rational ours;             // compared quantities (rates; subpacketization as integers)
    Rational theirs;
    std::string detail;
};

struct LemmaQuery {
    int K = 0;
    int z = 0;
    int m = 0;
    int b = 0;
    int t = 1;
    std::optional<int> t2;  // t'' for the SR1 lemma
    // Divisor pair (m1, m2) bracketing t''; the lowest-rate pair is searched when absent.
    std::optional<std::pair<int, int>> sr1_pair;
};

// Evaluates the five comparison lemmas (rk, subpacketization, sr1, sr2, mr).
std::vector<LemmaOutcome> lemma_predicates(const LemmaQuery& query);

struct ComparisonRow {
    Rational memory;
    Scheme scheme = Scheme::ours;
    std::optional<Rational> rate;  // nullopt: external formula or not defined here
    bool external = false;
    std::optional<Subpacketization> subpacketization;
};

std::vector<ComparisonRow> comparison_table(int K, int z, const std::vector<Rational>& grid);

// Default grid: i/100 for i = 0..100 merged with our corner abscissae.
std::vector<Rational> default_grid(int K, int z);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace macc
