#pragma once

#include "macc/design.hpp"
#include "macc/numeric.hpp"
#include "macc/topology.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace macc {

// Per-cell block counts: caches in cells 1..z-1 store t_prime blocks, cell z stores t_z.
struct CellCaps {
    int t_prime = 0;
    int t_z = 0;

    friend bool operator==(const CellCaps&, const CellCaps&) = default;
};

CellCaps compute_tt(int t, int b, int z);

// Blocks each user still misses: b - t'(z-1) - t_z.
int missing_blocks_per_user(int t, int b, int z);

// Closed-form rate in files for M = tN/b.
Rational achievable_rate(int b, int m, int z, int t);

struct SchemeParams {
    int files = 1;  // N
    int t = 1;      // memory M = t*N/b
};

enum class BlockChoice { deterministic, seeded };

struct PlacementOptions {
    BlockChoice choice = BlockChoice::deterministic;
    std::uint64_t seed = 0;
};

/**
 * Which blocks of each parallel class every cache stores, and the union every
 * user sees through its z caches. Block sets are sorted block indices within
 * the group's own parallel class.
 */
class Placement {
public:
    int groups() const { return m_; }
    int group_size() const { return b_; }
    int access_degree() const { return z_; }
    const SchemeParams& params() const { return params_; }
    CellCaps caps() const { return caps_; }

    const std::vector<int>& cache_blocks(CacheId cache) const;
    const std::vector<int>& user_blocks(UserId user) const;
    bool user_has_block(UserId user, int block) const;

    // Subfiles (over all N files) stored by a cache: |B_c| * b^(m-1) * N.
    std::uint64_t stored_subfiles(CacheId cache) const;

private:
    friend Placement place(const Design&, const Topology&, const SchemeParams&,
                           const PlacementOptions&);
    friend Placement place_explicit(const Design&, const Topology&, const SchemeParams&,
                                    const std::vector<std::vector<std::vector<int>>>&);

    int m_ = 0;
    int b_ = 0;
    int z_ = 0;
    std::uint64_t block_size_ = 0;
    SchemeParams params_;
    CellCaps caps_;
    std::vector<std::vector<std::vector<int>>> cache_blocks_;  // [group][cache]
    std::vector<std::vector<std::vector<int>>> user_blocks_;   // [group][user]
    std::vector<std::vector<std::vector<char>>> user_mask_;    // [group][user][block]
};

Placement place(const Design& design, const Topology& topology, const SchemeParams& params,
                const PlacementOptions& options = {});

// Builds a placement from explicit per-cache block sets (for reproducing worked examples).
// Shape and cell rules are still checked.
Placement place_explicit(const Design& design, const Topology& topology,
                         const SchemeParams& params,
                         const std::vector<std::vector<std::vector<int>>>& cache_blocks);

/**
 * Demand graph: left vertex (i,j) is cache c(i,j); its neighbours are the
 * blocks of class i missing from the user matched to that cache, ascending.
 */
struct DemandGraph {
    int m = 0;
    int b = 0;
    std::vector<std::vector<std::vector<int>>> adjacency;  // [group][cache] -> blocks

    std::size_t edge_count() const;
};

DemandGraph build_demand_graph(const Placement& placement, const MatchingAssignment& matchings);

struct Summand {
    UserId user;
    int file = 0;
    Point subfile = 0;

    friend bool operator==(const Summand&, const Summand&) = default;
};

// One XOR-coded broadcast Y^n_{j_1..j_m}.
struct Transmission {
    int n = 0;
    std::vector<int> coords;        // j_1..j_m
    std::vector<Summand> summands;  // one per group, group order
    std::vector<std::uint8_t> payload;
};

// demands[u] is the 1-based file of user u in (i,j) row-major order.
using Demands = std::vector<int>;

std::vector<Transmission> delivery(const Design& design, const Placement& placement,
                                   const MatchingAssignment& matchings, const Demands& demands);

// True when user's accessible caches hold subfile `s` (of every file).
bool user_knows(const Design& design, const Placement& placement, UserId user, Point s);

struct DecodeResult {
    std::vector<Point> recovered;  // from transmissions, sorted, unique
    std::vector<Point> cached;     // from own caches, sorted
    bool complete = false;         // recovered ∪ cached == {1..b^m}
};

// Symbolic decode: a transmission yields its summand when the user knows every
// other summand and the unknown one belongs to the user's demanded file.
DecodeResult decode(const Design& design, const Placement& placement, UserId user,
                    int demanded_file, std::span<const Transmission> transmissions);

// Deterministic subfile contents for the byte-level check.
class SubfileSource {
public:
    SubfileSource(std::uint64_t seed, std::size_t size);
    std::size_t size() const { return size_; }
    std::vector<std::uint8_t> bytes(int file, Point subfile) const;

private:
    std::uint64_t seed_;
    std::size_t size_;
};

// XOR of the summands' contents.
std::vector<std::uint8_t> encode_payload(const SubfileSource& source, const Transmission& tx);

// Byte-level decode of one transmission by `user`: cancels every summand the
// user holds in cache; returns the remaining bytes when exactly one summand
// (of the demanded file) is unknown.
std::optional<std::vector<std::uint8_t>> xor_decode(const Design& design,
                                                    const Placement& placement,
                                                    const SubfileSource& source, UserId user,
                                                    int demanded_file, const Transmission& tx);

struct PayloadOptions {
    std::size_t size = 0;  // bytes per subfile; 0 disables the byte-level check
    std::uint64_t seed = 0;
};

struct UserOutcome {
    UserId user;
    int file = 0;
    std::size_t cached = 0;
    std::size_t recovered = 0;
    bool complete = false;
};

struct SimulationReport {
    int m = 0;
    int b = 0;
    int z = 0;
    SchemeParams params;
    CellCaps caps;
    std::uint64_t subpacketization = 0;
    std::size_t transmission_count = 0;
    Rational rate;
    Rational expected_rate;
    std::vector<UserOutcome> users;
    std::vector<int> beneficiaries;  // per transmission
    bool all_complete = false;
    bool payload_checked = false;
    bool payload_ok = false;
    std::size_t payload_mismatches = 0;
    std::vector<Transmission> transmissions;
};

struct SimulationInput {
    const Design& design;
    const Topology& topology;
    SchemeParams params;
    Demands demands;
    PlacementOptions placement;
    std::optional<MatchingAssignment> matchings;  // extracted when absent
    // [group][cache] block sets; overrides `placement` when present.
    std::optional<std::vector<std::vector<std::vector<int>>>> cache_blocks;
    PayloadOptions payload;
};

SimulationReport simulate(const SimulationInput& input);

}  // namespace macc
