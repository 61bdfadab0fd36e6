#include "macc/cli.hpp"

#include "macc/analysis.hpp"
#include "macc/design.hpp"
#include "macc/engine.hpp"
#include "macc/errors.hpp"
#include "macc/json_io.hpp"
#include "macc/topology.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace macc {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw ArgumentError("write to " + path + " failed");
    }
}

Json read_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot read " + path);
    }
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Writes to `path` when given, otherwise to `out`.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

struct DesignArgs {
    int m = 0;
    int b = 0;
    int mu = 1;
    std::uint64_t budget = kDefaultPointBudget;
    std::string in;
    std::string out;
};

struct TopologyArgs {
    int m = 0;
    int b = 0;
    int z = 0;
    std::string kind = "canonical";
    std::uint64_t seed = 0;
    std::string in;
    std::string out;
    bool count = false;
};

struct SimulateArgs {
    int m = 0;
    int b = 0;
    int K = 0;
    int z = 0;
    int t = 1;
    int N = 0;
    std::string topology = "canonical";
    std::string topology_file;
    std::string placement = "deterministic";
    std::uint64_t seed = 0;
    std::string demands;
    std::size_t payload = 0;
    std::uint64_t budget = kDefaultPointBudget;
    std::string log;
    std::string report;
};

struct CompareArgs {
    int K = 0;
    int z = 0;
    std::optional<std::string> grid;
    std::string out;
    std::string json;
};

int cmd_design(const DesignArgs& a, std::ostream& out) {
    std::optional<Design> design;
    if (!a.in.empty()) {
        design = design_from_json(read_json(a.in));
    } else {
        if (a.m < 1 || a.b < 1) {
            throw ArgumentError("design needs --m and --b (or --in)");
        }
        design = construct_mcrd(a.m, a.b, a.mu, a.budget);
    }
    VerificationReport report = verify_mcrd(*design);
    if (a.out.empty()) {
        out << dump(Json{{"design", design_json(*design)},
                         {"verification", verification_json(report)}});
    } else {
        write_file(a.out, dump(design_json(*design)));
        out << dump(verification_json(report));
    }
    return report.passed ? kOk : kFailed;
}

int cmd_topology(const TopologyArgs& a, std::ostream& out) {
    if (a.count) {
        out << count_topologies(a.m, a.b, a.z).str() << "\n";
        return kOk;
    }
    std::optional<Topology> topology;
    if (!a.in.empty()) {
        topology = topology_from_json(read_json(a.in));
    } else if (a.kind == "canonical") {
        topology = canonical_topology(a.m, a.b, a.z);
    } else {
        topology = random_topology(a.m, a.b, a.z, a.seed);
    }
    ValidationReport report = validate(*topology);
    Json j{{"validation", validation_json(report)}};
    if (report.passed()) {
        j["matching"] = matching_json(extract_matchings(*topology));
    }
    if (a.out.empty()) {
        j["topology"] = topology_json(*topology);
    } else {
        write_file(a.out, dump(topology_json(*topology)));
    }
    out << dump(j);
    return report.passed() ? kOk : kFailed;
}

void resolve_shape(SimulateArgs& a) {
    if (a.K > 0) {
        if (a.m == 0 && a.b > 0 && a.K % a.b == 0) {
            a.m = a.K / a.b;
        } else if (a.b == 0 && a.m > 0 && a.K % a.m == 0) {
            a.b = a.K / a.m;
        }
        if (a.m * a.b != a.K) {
            throw ArgumentError("--K must equal m*b");
        }
    }
    if (a.m < 1 || a.b < 1) {
        throw ArgumentError("simulate needs --m and --b (or --K with one of them)");
    }
    if (a.z < 1) {
        throw ArgumentError("simulate needs --z");
    }
    if (a.N == 0) {
        a.N = a.m * a.b;
    }
    if (a.N < 1) {
        throw ArgumentError("--N must be positive");
    }
}

int cmd_simulate(SimulateArgs a, std::ostream& out) {
    resolve_shape(a);
    Design design = construct_mcrd(a.m, a.b, 1, a.budget);
    std::optional<Topology> topology;
    if (!a.topology_file.empty()) {
        topology = topology_from_json(read_json(a.topology_file));
    } else if (a.topology == "canonical") {
        topology = canonical_topology(a.m, a.b, a.z);
    } else {
        topology = random_topology(a.m, a.b, a.z, a.seed);
    }
    if (topology->groups() != a.m || topology->group_size() != a.b ||
        topology->access_degree() != a.z) {
        throw ArgumentError("topology file does not match --m/--b/--z");
    }

    Demands demands;
    if (!a.demands.empty()) {
        Json j = read_json(a.demands);
        try {
            demands = j.get<Demands>();
        } catch (const nlohmann::json::exception& e) {
            throw ArgumentError("demands must be a list of file indices: " +
                                std::string(e.what()));
        }
    } else {
        for (int u = 1; u <= a.m * a.b; ++u) {
            demands.push_back((u - 1) % a.N + 1);
        }
    }

    SimulationInput input{design, *topology, {a.N, a.t}, demands};
    input.placement = {a.placement == "seeded" ? BlockChoice::seeded : BlockChoice::deterministic,
                       a.seed};
    input.payload = {a.payload, a.seed};
    SimulationReport report = simulate(input);

    if (!a.log.empty()) {
        std::string text;
        for (const Transmission& tx : report.transmissions) {
            text += transmission_json(tx, a.b).dump() + "\n";
        }
        write_file(a.log, text);
    }
    if (!a.report.empty()) {
        write_file(a.report, dump(simulation_json(report)));
    }

    const auto& rate = report.rate;
    out << "transmissions " << report.transmission_count << "\n"
        << "subpacketization " << report.subpacketization << "\n"
        << "rate " << boost::multiprecision::numerator(rate) << "/"
        << boost::multiprecision::denominator(rate) << "\n"
        << "expected_rate " << boost::multiprecision::numerator(report.expected_rate) << "/"
        << boost::multiprecision::denominator(report.expected_rate) << "\n"
        << "all_decoded " << (report.all_complete ? "true" : "false") << "\n";
    if (report.payload_checked) {
        out << "payload_ok " << (report.payload_ok ? "true" : "false") << "\n";
    }
    bool ok = report.all_complete && report.rate == report.expected_rate &&
              (!report.payload_checked || report.payload_ok);
    return ok ? kOk : kFailed;
}

std::vector<Rational> parse_grid(const std::string& text) {
    std::vector<Rational> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            grid.push_back(parse_rational(item));
        }
    }
    return grid;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    std::vector<Rational> grid = a.grid ? parse_grid(*a.grid) : default_grid(a.K, a.z);
    std::vector<ComparisonRow> rows = comparison_table(a.K, a.z, grid);
    emit(out, a.out, comparison_csv(rows));
    if (!a.json.empty()) {
        write_file(a.json, dump(comparison_json(a.K, a.z, rows)));
    }
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-access coded caching: designs, topologies, simulation, comparisons",
                 "macc"};
    app.require_subcommand(1);

    DesignArgs design;
    auto* d = app.add_subcommand("design", "Construct or verify a resolvable block design");
    d->add_option("--m", design.m, "Number of parallel classes");
    d->add_option("--b", design.b, "Blocks per parallel class");
    d->add_option("--mu", design.mu, "Points shared by any cross tuple of blocks")
        ->capture_default_str();
    d->add_option("--budget", design.budget, "Maximum number of points")->capture_default_str();
    d->add_option("--in", design.in, "Verify a design JSON file instead of constructing one");
    d->add_option("--out", design.out, "Write the design JSON here");

    TopologyArgs topo;
    auto* t = app.add_subcommand("topology", "Build, validate or count user-to-cache topologies");
    t->add_option("--m", topo.m, "Number of groups");
    t->add_option("--b", topo.b, "Users (and caches) per group");
    t->add_option("--z", topo.z, "Caches read by each user");
    t->add_option("--kind", topo.kind, "canonical or random")
        ->check(CLI::IsMember({"canonical", "random"}))
        ->capture_default_str();
    t->add_option("--seed", topo.seed, "Seed for --kind random")->capture_default_str();
    t->add_option("--in", topo.in, "Validate a topology JSON file");
    t->add_option("--out", topo.out, "Write the topology JSON here");
    t->add_flag("--count", topo.count, "Print the number of topologies meeting C1 and C2");

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Run placement, delivery and decoding");
    s->add_option("--m", sim.m, "Number of groups");
    s->add_option("--b", sim.b, "Users (and caches) per group");
    s->add_option("--K", sim.K, "Total users; must equal m*b");
    s->add_option("--z", sim.z, "Caches read by each user")->required();
    s->add_option("--t", sim.t, "Memory parameter, M = tN/b")->capture_default_str();
    s->add_option("--N", sim.N, "Number of files (default K)");
    s->add_option("--topology", sim.topology, "canonical or random")
        ->check(CLI::IsMember({"canonical", "random"}))
        ->capture_default_str();
    s->add_option("--topology-file", sim.topology_file, "Topology JSON file");
    s->add_option("--placement", sim.placement, "deterministic or seeded block choice")
        ->check(CLI::IsMember({"deterministic", "seeded"}))
        ->capture_default_str();
    s->add_option("--seed", sim.seed, "Seed for every random choice")->capture_default_str();
    s->add_option("--demands", sim.demands, "JSON list of demanded files in user order");
    s->add_option("--payload", sim.payload, "Bytes per subfile for the XOR check (0 = off)")
        ->capture_default_str();
    s->add_option("--budget", sim.budget, "Maximum subpacketization")->capture_default_str();
    s->add_option("--log", sim.log, "Write transmissions as JSON lines here");
    s->add_option("--report", sim.report, "Write the simulation report JSON here");

    CompareArgs cmp;
    auto* c = app.add_subcommand("compare", "Rate and subpacketization comparison data");
    c->add_option("--K", cmp.K, "Total users")->required();
    c->add_option("--z", cmp.z, "Caches read by each user")->required();
    c->add_option("--grid", cmp.grid, "Comma separated M/N values (decimals or a/b)");
    c->add_option("--out", cmp.out, "Write the CSV here");
    c->add_option("--json", cmp.json, "Write the JSON mirror here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (d->parsed()) {
            return cmd_design(design, out);
        }
        if (t->parsed()) {
            if (topo.in.empty() && (topo.m < 1 || topo.b < 1 || topo.z < 1)) {
                throw ArgumentError("topology needs --m, --b and --z (or --in)");
            }
            return cmd_topology(topo, out);
        }
        if (s->parsed()) {
            return cmd_simulate(sim, out);
        }
        return cmd_compare(cmp, out);
    } catch (const ConditionError& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const GenerationError& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace macc
