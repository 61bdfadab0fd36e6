#include "macc/engine.hpp"

#include "macc/errors.hpp"
#include "rng.hpp"

#include <algorithm>
#include <numeric>

namespace macc {

namespace {

void check_tz(int t, int b, int z) {
    if (b < 1 || z < 1 || z > b) {
        throw ArgumentError("need 1 <= z <= b (z=" + std::to_string(z) + ", b=" +
                            std::to_string(b) + ")");
    }
    if (t < 1) {
        throw ArgumentError("memory parameter t must be >= 1 (got " + std::to_string(t) + ")");
    }
}

void check_mu_one(const Design& design) {
    if (!design.indexed() || design.nominal_mu() != std::optional<std::uint64_t>(1)) {
        throw UnsupportedDesignError("the caching scheme needs a design with mu = 1");
    }
}

std::size_t slot(NodeId id) { return static_cast<std::size_t>(id.index - 1); }

bool next_coords(std::vector<int>& coords, int b) {
    for (int i = static_cast<int>(coords.size()) - 1; i >= 0; --i) {
        if (coords[i] < b) {
            ++coords[i];
            return true;
        }
        coords[i] = 1;
    }
    return false;
}

int demand_of(const Demands& demands, UserId user, int b) {
    return demands[static_cast<std::size_t>(flat_id(user, b) - 1)];
}

}  // namespace

CellCaps compute_tt(int t, int b, int z) {
    check_tz(t, b, z);
    const int x = b / z;
    const int last = b - (z - 1) * x;
    return {std::min(t, x), std::min(t, last)};
}

int missing_blocks_per_user(int t, int b, int z) {
    CellCaps caps = compute_tt(t, b, z);
    return b - caps.t_prime * (z - 1) - caps.t_z;
}

Rational achievable_rate(int b, int m, int z, int t) {
    check_tz(t, b, z);
    if (m < 1) {
        throw ArgumentError("m must be >= 1");
    }
    const int x = b / z;
    if (t <= x) {
        return make_rational(b - t * z);
    }
    if (t < b - (z - 1) * x) {
        return make_rational(b - (z - 1) * x - t);
    }
    return make_rational(0);
}

const std::vector<int>& Placement::cache_blocks(CacheId cache) const {
    return cache_blocks_.at(cache.group - 1).at(slot(cache));
}

const std::vector<int>& Placement::user_blocks(UserId user) const {
    return user_blocks_.at(user.group - 1).at(slot(user));
}

bool Placement::user_has_block(UserId user, int block) const {
    if (block < 1 || block > b_) {
        throw ArgumentError("block index " + std::to_string(block) + " out of range");
    }
    return user_mask_.at(user.group - 1).at(slot(user))[block - 1] != 0;
}

std::uint64_t Placement::stored_subfiles(CacheId cache) const {
    return cache_blocks(cache).size() * block_size_ * static_cast<std::uint64_t>(params_.files);
}

Placement place(const Design& design, const Topology& topology, const SchemeParams& params,
                const PlacementOptions& options) {
    const int m = topology.groups();
    const int b = topology.group_size();
    const int z = topology.access_degree();
    CellCaps caps = compute_tt(params.t, b, z);
    SplitMix64 rng(options.seed);

    std::vector<std::vector<std::vector<int>>> sets(m, std::vector<std::vector<int>>(b));
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= b; ++j) {
            const int cell = cache_cell(j, b, z);
            const int cap = cell < z ? caps.t_prime : caps.t_z;
            std::vector<int> others;
            for (int k = cell_begin(cell, b, z); k < cell_begin(cell, b, z) + cell_size(cell, b, z);
                 ++k) {
                if (k != j) {
                    others.push_back(k);
                }
            }
            if (cap - 1 > static_cast<int>(others.size())) {
                throw InvariantError("cell " + std::to_string(cell) + " too small for " +
                                     std::to_string(cap) + " blocks");
            }
            if (options.choice == BlockChoice::seeded) {
                for (int k = 0; k < cap - 1; ++k) {
                    auto pick = k + rng.below(others.size() - k);
                    std::swap(others[k], others[pick]);
                }
            }
            auto& set = sets[i - 1][j - 1];
            set.push_back(j);
            set.insert(set.end(), others.begin(), others.begin() + (cap - 1));
        }
    }
    return place_explicit(design, topology, params, sets);
}

Placement place_explicit(const Design& design, const Topology& topology,
                         const SchemeParams& params,
                         const std::vector<std::vector<std::vector<int>>>& cache_blocks) {
    const int m = topology.groups();
    const int b = topology.group_size();
    const int z = topology.access_degree();
    if (design.classes() != m || design.blocks_per_class() != b) {
        throw ArgumentError("design (m=" + std::to_string(design.classes()) + ", b=" +
                            std::to_string(design.blocks_per_class()) +
                            ") does not match topology (m=" + std::to_string(m) + ", b=" +
                            std::to_string(b) + ")");
    }
    if (params.files < 1) {
        throw ArgumentError("need at least one file");
    }
    check_mu_one(design);
    ValidationReport report = validate(topology);
    if (!report.passed()) {
        throw ConditionError("topology invalid: " + report.issues.front());
    }
    if (static_cast<int>(cache_blocks.size()) != m) {
        throw ArgumentError("cache block sets must cover every group");
    }

    Placement p;
    p.m_ = m;
    p.b_ = b;
    p.z_ = z;
    p.params_ = params;
    p.caps_ = compute_tt(params.t, b, z);
    p.block_size_ = design.block(1, 1).size();
    p.cache_blocks_.assign(m, {});
    for (int i = 1; i <= m; ++i) {
        if (static_cast<int>(cache_blocks[i - 1].size()) != b) {
            throw ArgumentError("group " + std::to_string(i) + " needs " + std::to_string(b) +
                                " cache block sets");
        }
        for (int j = 1; j <= b; ++j) {
            std::vector<int> set = cache_blocks[i - 1][j - 1];
            std::sort(set.begin(), set.end());
            const int cell = cache_cell(j, b, z);
            const int cap = cell < z ? p.caps_.t_prime : p.caps_.t_z;
            std::string where = "cache c(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
                throw ArgumentError(where + " repeats a block");
            }
            if (!std::binary_search(set.begin(), set.end(), j)) {
                throw ArgumentError(where + " must store its own block");
            }
            if (static_cast<int>(set.size()) != cap) {
                throw ArgumentError(where + " stores " + std::to_string(set.size()) +
                                    " blocks, expected " + std::to_string(cap));
            }
            for (int k : set) {
                if (k < 1 || k > b || cache_cell(k, b, z) != cell) {
                    throw ArgumentError(where + " stores block " + std::to_string(k) +
                                        " outside its cell");
                }
            }
            if (static_cast<int>(set.size()) > params.t) {
                throw InvariantError(where + " exceeds its memory");
            }
            p.cache_blocks_[i - 1].push_back(std::move(set));
        }
    }

    p.user_blocks_.assign(m, std::vector<std::vector<int>>(b));
    p.user_mask_.assign(m, std::vector<std::vector<char>>(b, std::vector<char>(b, 0)));
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= b; ++j) {
            auto& mask = p.user_mask_[i - 1][j - 1];
            for (CacheId c : topology.access({i, j})) {
                for (int k : p.cache_blocks_[i - 1][c.index - 1]) {
                    mask[k - 1] = 1;
                }
            }
            for (int k = 1; k <= b; ++k) {
                if (mask[k - 1]) {
                    p.user_blocks_[i - 1][j - 1].push_back(k);
                }
            }
        }
    }
    return p;
}

std::size_t DemandGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& group : adjacency) {
        for (const auto& adj : group) {
            total += adj.size();
        }
    }
    return total;
}

DemandGraph build_demand_graph(const Placement& placement, const MatchingAssignment& matchings) {
    DemandGraph graph;
    graph.m = placement.groups();
    graph.b = placement.group_size();
    if (matchings.groups() != graph.m) {
        throw ArgumentError("matching and placement disagree on the number of groups");
    }
    graph.adjacency.assign(graph.m, std::vector<std::vector<int>>(graph.b));
    for (int i = 1; i <= graph.m; ++i) {
        for (int j = 1; j <= graph.b; ++j) {
            UserId user{i, matchings.user_of({i, j})};
            for (int k = 1; k <= graph.b; ++k) {
                if (!placement.user_has_block(user, k)) {
                    graph.adjacency[i - 1][j - 1].push_back(k);
                }
            }
        }
    }
    return graph;
}

std::vector<Transmission> delivery(const Design& design, const Placement& placement,
                                   const MatchingAssignment& matchings, const Demands& demands) {
    check_mu_one(design);
    const int m = placement.groups();
    const int b = placement.group_size();
    if (design.classes() != m || design.blocks_per_class() != b) {
        throw ArgumentError("design and placement shapes differ");
    }
    if (static_cast<int>(demands.size()) != m * b) {
        throw ArgumentError("expected " + std::to_string(m * b) + " demands, got " +
                            std::to_string(demands.size()));
    }
    for (int d : demands) {
        if (d < 1 || d > placement.params().files) {
            throw ArgumentError("demand " + std::to_string(d) + " outside 1.." +
                                std::to_string(placement.params().files));
        }
    }
    DemandGraph graph = build_demand_graph(placement, matchings);
    const int rounds = missing_blocks_per_user(placement.params().t, b, placement.access_degree());

    std::vector<Transmission> out;
    out.reserve(static_cast<std::size_t>(rounds) * design.tuple_count());
    std::vector<int> coords(m, 1);
    std::vector<int> swapped(m);
    for (int n = 1; n <= rounds; ++n) {
        std::fill(coords.begin(), coords.end(), 1);
        do {
            Transmission tx;
            tx.n = n;
            tx.coords = coords;
            for (int i = 1; i <= m; ++i) {
                const auto& missing = graph.adjacency[i - 1][coords[i - 1] - 1];
                if (static_cast<int>(missing.size()) != rounds) {
                    throw InvariantError("demand graph degree differs from the round count");
                }
                UserId user{i, matchings.user_of({i, coords[i - 1]})};
                swapped = coords;
                swapped[i - 1] = missing[n - 1];
                auto points = design.points_of_tuple(swapped);
                if (points.size() != 1) {
                    throw InvariantError("block tuple does not meet in a single point");
                }
                tx.summands.push_back({user, demand_of(demands, user, b), points[0]});
            }
            out.push_back(std::move(tx));
        } while (next_coords(coords, b));
    }
    return out;
}

bool user_knows(const Design& design, const Placement& placement, UserId user, Point s) {
    return placement.user_has_block(user, design.block_containing(user.group, s));
}

namespace {

// Index of the only summand `user` does not know, or -1.
int single_unknown(const Design& design, const Placement& placement, UserId user,
                   const Transmission& tx) {
    int unknown = -1;
    for (std::size_t k = 0; k < tx.summands.size(); ++k) {
        if (!user_knows(design, placement, user, tx.summands[k].subfile)) {
            if (unknown >= 0) {
                return -1;
            }
            unknown = static_cast<int>(k);
        }
    }
    return unknown;
}

}  // namespace

DecodeResult decode(const Design& design, const Placement& placement, UserId user,
                    int demanded_file, std::span<const Transmission> transmissions) {
    DecodeResult result;
    for (const Transmission& tx : transmissions) {
        int k = single_unknown(design, placement, user, tx);
        if (k >= 0 && tx.summands[k].file == demanded_file) {
            result.recovered.push_back(tx.summands[k].subfile);
        }
    }
    std::sort(result.recovered.begin(), result.recovered.end());
    result.recovered.erase(std::unique(result.recovered.begin(), result.recovered.end()),
                           result.recovered.end());
    const std::uint64_t total = design.point_count();
    for (std::uint64_t s = 1; s <= total; ++s) {
        if (user_knows(design, placement, user, static_cast<Point>(s))) {
            result.cached.push_back(static_cast<Point>(s));
        }
    }
    std::vector<Point> all;
    std::set_union(result.recovered.begin(), result.recovered.end(), result.cached.begin(),
                   result.cached.end(), std::back_inserter(all));
    result.complete = all.size() == total;
    return result;
}

SubfileSource::SubfileSource(std::uint64_t seed, std::size_t size) : seed_(seed), size_(size) {}

std::vector<std::uint8_t> SubfileSource::bytes(int file, Point subfile) const {
    SplitMix64 rng(mix_seed(mix_seed(seed_, static_cast<std::uint64_t>(file)), subfile));
    std::vector<std::uint8_t> out(size_);
    for (std::size_t k = 0; k < size_; k += 8) {
        std::uint64_t word = rng.next();
        for (std::size_t q = 0; q < 8 && k + q < size_; ++q) {
            out[k + q] = static_cast<std::uint8_t>(word >> (8 * q));
        }
    }
    return out;
}

namespace {

void xor_into(std::vector<std::uint8_t>& acc, const std::vector<std::uint8_t>& v) {
    for (std::size_t k = 0; k < acc.size(); ++k) {
        acc[k] ^= v[k];
    }
}

}  // namespace

std::vector<std::uint8_t> encode_payload(const SubfileSource& source, const Transmission& tx) {
    std::vector<std::uint8_t> acc(source.size(), 0);
    for (const Summand& s : tx.summands) {
        xor_into(acc, source.bytes(s.file, s.subfile));
    }
    return acc;
}

std::optional<std::vector<std::uint8_t>> xor_decode(const Design& design,
                                                    const Placement& placement,
                                                    const SubfileSource& source, UserId user,
                                                    int demanded_file, const Transmission& tx) {
    if (tx.payload.size() != source.size()) {
        throw ArgumentError("transmission carries no payload of the expected size");
    }
    int k = single_unknown(design, placement, user, tx);
    if (k < 0 || tx.summands[k].file != demanded_file) {
        return std::nullopt;
    }
    std::vector<std::uint8_t> acc = tx.payload;
    for (std::size_t q = 0; q < tx.summands.size(); ++q) {
        if (static_cast<int>(q) != k) {
            // The user reads this summand from its own caches.
            xor_into(acc, source.bytes(tx.summands[q].file, tx.summands[q].subfile));
        }
    }
    return acc;
}

SimulationReport simulate(const SimulationInput& input) {
    const Design& design = input.design;
    const Topology& topology = input.topology;
    const int m = topology.groups();
    const int b = topology.group_size();

    Placement placement =
        input.cache_blocks
            ? place_explicit(design, topology, input.params, *input.cache_blocks)
            : place(design, topology, input.params, input.placement);
    MatchingAssignment matchings =
        input.matchings ? *input.matchings : extract_matchings(topology);
    if (!is_valid_matching(topology, matchings)) {
        throw ArgumentError("matching does not follow the topology");
    }

    SimulationReport report;
    report.m = m;
    report.b = b;
    report.z = topology.access_degree();
    report.params = input.params;
    report.caps = placement.caps();
    report.subpacketization = design.point_count();
    report.transmissions = delivery(design, placement, matchings, input.demands);
    report.transmission_count = report.transmissions.size();
    report.rate = Rational(BigInt(report.transmission_count), BigInt(report.subpacketization));
    report.expected_rate = achievable_rate(b, m, report.z, input.params.t);

    std::optional<SubfileSource> source;
    if (input.payload.size > 0) {
        source.emplace(input.payload.seed, input.payload.size);
        for (Transmission& tx : report.transmissions) {
            tx.payload = encode_payload(*source, tx);
        }
        report.payload_checked = true;
    }

    for (const Transmission& tx : report.transmissions) {
        int count = 0;
        for (std::size_t k = 0; k < tx.summands.size(); ++k) {
            if (single_unknown(design, placement, tx.summands[k].user, tx) == static_cast<int>(k)) {
                ++count;
            }
        }
        report.beneficiaries.push_back(count);
    }

    report.all_complete = true;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= b; ++j) {
            UserId user{i, j};
            int file = demand_of(input.demands, user, b);
            DecodeResult result = decode(design, placement, user, file, report.transmissions);
            report.users.push_back(
                {user, file, result.cached.size(), result.recovered.size(), result.complete});
            report.all_complete = report.all_complete && result.complete;

            if (!source) {
                continue;
            }
            for (const Transmission& tx : report.transmissions) {
                int k = single_unknown(design, placement, user, tx);
                bool symbolic = k >= 0 && tx.summands[k].file == file;
                auto bytes = xor_decode(design, placement, *source, user, file, tx);
                if (symbolic != bytes.has_value() ||
                    (bytes && *bytes != source->bytes(file, tx.summands[k].subfile))) {
                    ++report.payload_mismatches;
                }
            }
        }
    }
    report.payload_ok = report.payload_checked && report.payload_mismatches == 0;
    return report;
}

}  // namespace macc
