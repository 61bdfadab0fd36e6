#include "macc/json_io.hpp"

#include "macc/errors.hpp"

#include <map>

namespace macc {

namespace {

// Exact integers that may exceed 64 bits are written as decimal strings.
Json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ArgumentError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("bad field '") + key + "': " + e.what());
    }
}

std::string hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t v : bytes) {
        out += digits[v >> 4];
        out += digits[v & 15];
    }
    return out;
}

}  // namespace

Json rational_json(const Rational& value) {
    return Json{{"num", big_json(boost::multiprecision::numerator(value))},
                {"den", big_json(boost::multiprecision::denominator(value))}};
}

Json design_json(const Design& design) {
    Json j;
    j["m"] = design.classes();
    j["b"] = design.blocks_per_class();
    auto mu = design.nominal_mu();
    j["mu"] = mu ? Json(*mu) : Json(nullptr);
    j["points"] = design.point_count();
    j["blocks"] = design.parallel_classes();
    return j;
}

Design design_from_json(const Json& j) {
    const int m = field<int>(j, "m");
    const int b = field<int>(j, "b");
    auto classes = field<std::vector<std::vector<Block>>>(j, "blocks");
    std::uint64_t points = 0;
    if (j.contains("points")) {
        points = field<std::uint64_t>(j, "points");
    } else {
        for (const auto& cls : classes) {
            for (const auto& block : cls) {
                for (Point p : block) {
                    points = std::max<std::uint64_t>(points, p);
                }
            }
        }
    }
    return Design(m, b, points, std::move(classes));
}

Json verification_json(const VerificationReport& report) {
    Json j;
    j["passed"] = report.passed;
    j["class_partitions"] = report.class_partitions;
    j["uniform_block_size"] = report.uniform_block_size;
    j["block_size"] = report.uniform_block_size ? Json(report.block_size) : Json(nullptr);
    j["min_intersection"] = report.min_intersection;
    j["max_intersection"] = report.max_intersection;
    j["mu"] = report.measured_mu ? Json(*report.measured_mu) : Json(nullptr);
    j["tuples_checked"] = report.tuples_checked;
    j["issues"] = report.issues;
    return j;
}

Json topology_json(const Topology& topology) {
    const int b = topology.group_size();
    Json access = Json::array();
    for (const auto& caches : topology.all_access()) {
        Json row = Json::array();
        for (CacheId c : caches) {
            row.push_back(flat_id(c, b));
        }
        access.push_back(std::move(row));
    }
    return Json{{"m", topology.groups()},
                {"b", b},
                {"z", topology.access_degree()},
                {"access", std::move(access)}};
}

Topology topology_from_json(const Json& j) {
    const int m = field<int>(j, "m");
    const int b = field<int>(j, "b");
    const int z = field<int>(j, "z");
    auto rows = field<std::vector<std::vector<int>>>(j, "access");
    if (b < 1) {
        throw ArgumentError("b must be positive");
    }
    std::vector<std::vector<CacheId>> access;
    for (const auto& row : rows) {
        std::vector<CacheId> caches;
        for (int id : row) {
            if (id < 1 || id > m * b) {
                throw ArgumentError("cache id " + std::to_string(id) + " out of range");
            }
            caches.push_back(from_flat_id(id, b));
        }
        access.push_back(std::move(caches));
    }
    return Topology(m, b, z, std::move(access));
}

Json validation_json(const ValidationReport& report) {
    return Json{{"passed", report.passed()},
                {"c1", report.c1},
                {"c2", report.c2},
                {"c2_at_most", report.c2_at_most},
                {"c3", report.c3},
                {"matching_sizes", report.matching_sizes},
                {"issues", report.issues},
                {"warnings", report.warnings}};
}

Json matching_json(const MatchingAssignment& matching) {
    return Json{{"cache_of_user", matching.table()}};
}

Json transmission_json(const Transmission& tx, int b) {
    Json summands = Json::array();
    for (const Summand& s : tx.summands) {
        summands.push_back(
            Json{{"user", flat_id(s.user, b)}, {"file", s.file}, {"subfile", s.subfile}});
    }
    Json j{{"n", tx.n}, {"coords", tx.coords}, {"summands", std::move(summands)}};
    if (!tx.payload.empty()) {
        j["payload_hex"] = hex(tx.payload);
    }
    return j;
}

Json simulation_json(const SimulationReport& report) {
    std::map<int, int> histogram;
    for (int count : report.beneficiaries) {
        ++histogram[count];
    }
    Json hist = Json::object();
    for (auto [count, times] : histogram) {
        hist[std::to_string(count)] = times;
    }
    Json users = Json::array();
    for (const UserOutcome& u : report.users) {
        users.push_back(Json{{"user", flat_id(u.user, report.b)},
                             {"group", u.user.group},
                             {"index", u.user.index},
                             {"file", u.file},
                             {"cached", u.cached},
                             {"recovered", u.recovered},
                             {"complete", u.complete}});
    }
    Json j;
    j["m"] = report.m;
    j["b"] = report.b;
    j["z"] = report.z;
    j["K"] = report.m * report.b;
    j["N"] = report.params.files;
    j["t"] = report.params.t;
    j["t_prime"] = report.caps.t_prime;
    j["t_z"] = report.caps.t_z;
    j["subpacketization"] = report.subpacketization;
    j["transmissions"] = report.transmission_count;
    j["rate"] = rational_json(report.rate);
    j["expected_rate"] = rational_json(report.expected_rate);
    j["rate_matches"] = report.rate == report.expected_rate;
    j["beneficiaries"] = std::move(hist);
    j["all_complete"] = report.all_complete;
    j["payload"] = Json{{"checked", report.payload_checked},
                        {"ok", report.payload_ok},
                        {"mismatches", report.payload_mismatches}};
    j["users"] = std::move(users);
    return j;
}

Json comparison_json(int K, int z, const std::vector<ComparisonRow>& rows) {
    Json out = Json::array();
    for (const ComparisonRow& row : rows) {
        Json j;
        j["memory"] = rational_json(row.memory);
        j["scheme"] = std::string(scheme_name(row.scheme));
        if (row.external) {
            j["rate"] = "external";
        } else {
            j["rate"] = row.rate ? rational_json(*row.rate) : Json(nullptr);
        }
        if (row.subpacketization) {
            j["subpacketization"] = Json{{"low", big_json(row.subpacketization->low)},
                                         {"high", big_json(row.subpacketization->high)}};
        } else {
            j["subpacketization"] = nullptr;
        }
        out.push_back(std::move(j));
    }
    return Json{{"K", K}, {"z", z}, {"rows", std::move(out)}};
}

}  // namespace macc
