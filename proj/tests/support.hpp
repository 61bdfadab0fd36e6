#pragma once

#include "macc/analysis.hpp"
#include "macc/design.hpp"
#include "macc/engine.hpp"
#include "macc/errors.hpp"
#include "macc/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace support {

using namespace macc;

// Builds a topology from 1-based in-group cache indices per user, row-major.
inline Topology topology_from_indices(int m, int b, int z,
                                      const std::vector<std::vector<int>>& per_user) {
    std::vector<std::vector<CacheId>> access;
    for (std::size_t u = 0; u < per_user.size(); ++u) {
        int group = static_cast<int>(u) / b + 1;
        std::vector<CacheId> caches;
        for (int c : per_user[u]) {
            caches.push_back({group, c});
        }
        access.push_back(std::move(caches));
    }
    return Topology(m, b, z, std::move(access));
}

// K=8, z=2 example graph.
inline Topology example_a_topology() {
    return topology_from_indices(2, 4, 2,
                                 {{1, 3}, {2, 4}, {1, 4}, {2, 3},    // group 1
                                  {1, 4}, {2, 3}, {2, 4}, {1, 3}});  // group 2
}

// Example matching for K=8: cache_of_user per group.
inline MatchingAssignment example_a_matching() {
    return MatchingAssignment({{1, 2, 4, 3}, {4, 3, 2, 1}});
}

// K=14, z=3 example graph (same access lists in both groups).
inline Topology example_b_topology() {
    std::vector<std::vector<int>> group = {{1, 3, 5}, {2, 3, 5}, {2, 3, 5}, {2, 4, 5},
                                           {2, 3, 5}, {2, 3, 6}, {2, 3, 7}};
    std::vector<std::vector<int>> all = group;
    all.insert(all.end(), group.begin(), group.end());
    return topology_from_indices(2, 7, 3, all);
}

inline std::vector<std::vector<std::vector<int>>> example_b_cache_blocks() {
    std::vector<std::vector<int>> group = {{1, 2}, {1, 2}, {3, 4}, {3, 4},
                                           {5, 6}, {5, 6}, {5, 7}};
    return {group, group};
}

inline MatchingAssignment identity_matching(int m, int b) {
    std::vector<int> row(b);
    for (int j = 0; j < b; ++j) {
        row[j] = j + 1;
    }
    return MatchingAssignment(std::vector<std::vector<int>>(m, row));
}

inline Demands distinct_demands(int users) {
    Demands d(users);
    for (int u = 0; u < users; ++u) {
        d[u] = u + 1;
    }
    return d;
}

// One randomized engine configuration for the property suite.
struct Config {
    int m = 1;
    int b = 1;
    int z = 1;
    int t = 1;
    int files = 1;
    std::uint64_t seed = 0;
    Demands demands;

    std::string describe() const {
        return "m=" + std::to_string(m) + " b=" + std::to_string(b) + " z=" + std::to_string(z) +
               " t=" + std::to_string(t) + " N=" + std::to_string(files) +
               " seed=" + std::to_string(seed);
    }
};

inline std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int k = 0; k < exp; ++k) {
        r *= base;
    }
    return r;
}

// Seeded configurations with b^m <= 1e5. Decoding every user against every
// transmission costs about K * R * b^m * m^2, which is kept below `work_cap`.
inline std::vector<Config> random_configs(std::uint64_t seed, int count,
                                          double work_cap = 5e7) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    std::vector<Config> out;
    while (static_cast<int>(out.size()) < count) {
        Config c;
        static constexpr int kMaxB[] = {0, 200, 100, 46, 17, 10};
        c.m = pick(1, 5);
        c.b = pick(1, kMaxB[c.m]);
        if (ipow(c.b, c.m) > 100000) {
            continue;
        }
        c.z = pick(1, c.b);
        c.t = pick(1, c.b + 1);
        int K = c.m * c.b;
        int x = c.b / c.z;
        int R = c.b - std::min(c.t, x) * (c.z - 1) - std::min(c.t, c.b - (c.z - 1) * x);
        double work = static_cast<double>(K) * R * ipow(c.b, c.m) * c.m * c.m;
        if (work > work_cap) {
            continue;
        }
        c.files = pick(1, K + 2);
        c.seed = rng();
        for (int u = 0; u < K; ++u) {
            c.demands.push_back(pick(1, c.files));
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Checks every engine invariant on one configuration; returns failure messages.
inline std::vector<std::string> check_config(const Config& c, std::size_t payload_size = 8) {
    std::vector<std::string> fail;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            fail.push_back(c.describe() + ": " + what);
        }
    };
    Design design = construct_mcrd(c.m, c.b, 1);
    Topology topology = canonical_topology(c.m, c.b, c.z);
    try {
        topology = random_topology(c.m, c.b, c.z, c.seed);
    } catch (const GenerationError&) {
        // Large single-cell groups rarely admit a perfect matching at random.
    }
    SimulationInput input{design, topology, {c.files, c.t}, c.demands};
    input.placement = {BlockChoice::seeded, c.seed ^ 0x5bd1e995ULL};
    input.payload = {payload_size, c.seed + 1};
    SimulationReport report = simulate(input);

    CellCaps caps = compute_tt(c.t, c.b, c.z);
    const int missing = c.b - caps.t_prime * (c.z - 1) - caps.t_z;
    const std::uint64_t F = ipow(c.b, c.m);
    expect(report.transmission_count == static_cast<std::size_t>(missing) * F,
           "transmission count");
    expect(report.rate == achievable_rate(c.b, c.m, c.z, c.t), "rate");
    expect(report.all_complete, "decode completeness");
    bool gain = true;
    for (std::size_t k = 0; k < report.transmissions.size(); ++k) {
        gain = gain && report.beneficiaries[k] == c.m &&
               static_cast<int>(report.transmissions[k].summands.size()) == c.m;
    }
    expect(gain, "coding gain m per transmission");
    expect(report.payload_checked && report.payload_ok && report.payload_mismatches == 0,
           "symbolic and byte-level decode agree");

    Placement placement = place(design, topology, {c.files, c.t},
                                {BlockChoice::seeded, c.seed ^ 0x5bd1e995ULL});
    bool disjoint = true;
    bool feasible = true;
    bool user_size = true;
    for (int i = 1; i <= c.m; ++i) {
        for (int j1 = 1; j1 <= c.b; ++j1) {
            feasible = feasible && placement.stored_subfiles({i, j1}) <=
                                       static_cast<std::uint64_t>(c.t) * (F / c.b) * c.files;
            user_size = user_size &&
                        static_cast<int>(placement.user_blocks({i, j1}).size()) ==
                            caps.t_prime * (c.z - 1) + caps.t_z;
            for (int j2 = 1; j2 <= c.b; ++j2) {
                if (cache_cell(j1, c.b, c.z) == cache_cell(j2, c.b, c.z)) {
                    continue;
                }
                for (int blk : placement.cache_blocks({i, j1})) {
                    const auto& other = placement.cache_blocks({i, j2});
                    disjoint = disjoint &&
                               std::find(other.begin(), other.end(), blk) == other.end();
                }
            }
        }
    }
    expect(disjoint, "caches in different cells share a block");
    expect(feasible, "cache memory exceeded");
    expect(user_size, "user block count");

    DemandGraph graph = build_demand_graph(placement, extract_matchings(topology));
    bool uniform = true;
    for (const auto& group : graph.adjacency) {
        for (const auto& adj : group) {
            uniform = uniform && static_cast<int>(adj.size()) == missing;
        }
    }
    expect(uniform, "demand graph left degree");
    return fail;
}

}  // namespace support
