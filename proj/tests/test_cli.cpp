#include "macc/cli.hpp"
#include "macc/json_io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "macc");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = macc::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) {
        dir = fs::temp_directory_path() / ("macc_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& file) const { return (dir / file).string(); }
};

}  // namespace

TEST_CASE("design command") {
    Run r = run({"design", "--m", "2", "--b", "4", "--mu", "1"});
    CHECK(r.code == 0);
    auto j = macc::Json::parse(r.out);
    CHECK(j["verification"]["passed"] == true);
    CHECK(j["design"]["blocks"][1][0] == macc::Json::array({1, 5, 9, 13}));

    r = run({"design", "--m", "3", "--b", "2", "--mu", "2"});
    CHECK(r.code == 0);
    CHECK(macc::Json::parse(r.out)["design"]["mu"] == 2);
    CHECK(run({"design", "--m", "1", "--b", "1", "--mu", "1"}).code == 0);
}

TEST_CASE("design verification failure exits 1") {
    Scratch s("design_fail");
    std::ofstream(s / "bad.json") << R"({"m": 2, "b": 4, "mu": 1, "points": 16, "blocks": [
        [[1,2,3,4],[5,6,7,8],[9,10,11,12],[13,14,15,16]],
        [[1,2,9,13],[5,6,10,14],[3,7,11,15],[4,8,12,16]]]})";
    Run r = run({"design", "--in", s / "bad.json"});
    CHECK(r.code == 1);
    CHECK(macc::Json::parse(r.out)["verification"]["passed"] == false);
}

TEST_CASE("topology command") {
    Run r = run({"topology", "--m", "2", "--b", "7", "--z", "3"});
    CHECK(r.code == 0);
    auto j = macc::Json::parse(r.out);
    CHECK(j["validation"]["c3"] == true);

    r = run({"topology", "--m", "2", "--b", "4", "--z", "2", "--count"});
    CHECK(r.code == 0);
    CHECK(r.out == "65536\n");

    Scratch s("topology");
    std::ofstream(s / "bad.json")
        << R"({"m": 1, "b": 4, "z": 2, "access": [[1,3],[1,3],[1,3],[2,4]]})";
    r = run({"topology", "--in", s / "bad.json"});
    CHECK(r.code == 1);
    CHECK(macc::Json::parse(r.out)["validation"]["c3"] == false);
}

TEST_CASE("simulate command") {
    Run r = run({"simulate", "--m", "2", "--b", "4", "--z", "2", "--t", "1", "--topology",
                 "canonical"});
    CHECK(r.code == 0);
    CHECK(r.out.find("transmissions 32\n") != std::string::npos);
    CHECK(r.out.find("rate 2/1\n") != std::string::npos);
    CHECK(r.out.find("all_decoded true\n") != std::string::npos);

    r = run({"simulate", "--m", "2", "--b", "7", "--z", "3", "--t", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("transmissions 49\n") != std::string::npos);
    CHECK(r.out.find("rate 1/1\n") != std::string::npos);

    r = run({"simulate", "--K", "8", "--b", "4", "--z", "2", "--payload", "64", "--seed", "7",
             "--topology", "random", "--placement", "seeded"});
    CHECK(r.code == 0);
    CHECK(r.out.find("payload_ok true\n") != std::string::npos);
}

TEST_CASE("simulate writes log and report") {
    Scratch s("simulate_files");
    Run r = run({"simulate", "--m", "2", "--b", "4", "--z", "2", "--payload", "4", "--log",
                 s / "log.jsonl", "--report", s / "report.json"});
    CHECK(r.code == 0);
    std::istringstream log(slurp(s.dir / "log.jsonl"));
    std::string line;
    int lines = 0;
    while (std::getline(log, line)) {
        auto j = macc::Json::parse(line);
        CHECK(j.contains("payload_hex"));
        CHECK(j["summands"].size() == 2u);
        ++lines;
    }
    CHECK(lines == 32);
    auto report = macc::Json::parse(slurp(s.dir / "report.json"));
    CHECK(report["rate"]["num"] == 2);
    CHECK(report["rate"]["den"] == 1);
}

TEST_CASE("compare command") {
    Run r = run({"compare", "--K", "100", "--z", "5", "--grid", "0.16,0.17,0.18,0.19,0.2"});
    CHECK(r.code == 0);
    for (const char* row : {"4,25,ours,2.000000,", "17,100,ours,1.500000,",
                            "9,50,ours,1.000000,", "19,100,ours,0.500000,", "1,5,ours,0.000000,",
                            "4,25,rk,4.000000,", "17,100,rk,2.250000,", "19,100,rk,0.250000,"}) {
        CHECK_MESSAGE(r.out.find(row) != std::string::npos, row);
    }
    r = run({"compare", "--K", "8", "--z", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1,4,ours,2.000000") != std::string::npos);

    r = run({"compare", "--K", "8", "--z", "2", "--grid", ""});
    CHECK(r.code == 0);
    CHECK(r.out == "mn_num,mn_den,scheme,rate,log10_subpacketization\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"design", "--m", "x"}).code == 2);
    CHECK(run({"design"}).code == 2);
    CHECK(run({"simulate", "--m", "2", "--b", "4"}).code == 2);
    CHECK(run({"simulate", "--K", "9", "--m", "2", "--b", "4", "--z", "2"}).code == 2);
    CHECK(run({"simulate", "--m", "2", "--b", "4", "--z", "5"}).code == 2);
    CHECK(run({"compare", "--K", "8", "--z", "2", "--grid", "abc"}).code == 2);
    CHECK(run({"topology", "--m", "2"}).code == 2);
    Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("every command is deterministic in process") {
    Scratch s("determinism");
    std::vector<std::vector<std::string>> commands = {
        {"design", "--m", "3", "--b", "3"},
        {"topology", "--m", "2", "--b", "9", "--z", "3", "--kind", "random", "--seed", "5"},
        {"simulate", "--m", "2", "--b", "6", "--z", "2", "--t", "2", "--topology", "random",
         "--placement", "seeded", "--seed", "11", "--payload", "16", "--log", s / "log.jsonl",
         "--report", s / "report.json"},
        {"compare", "--K", "60", "--z", "3", "--json", s / "cmp.json"},
    };
    for (const auto& cmd : commands) {
        Run a = run(cmd);
        std::string files_a = slurp(s.dir / "log.jsonl") + slurp(s.dir / "report.json") +
                              slurp(s.dir / "cmp.json");
        Run b = run(cmd);
        std::string files_b = slurp(s.dir / "log.jsonl") + slurp(s.dir / "report.json") +
                              slurp(s.dir / "cmp.json");
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
        CHECK(files_a == files_b);
    }
}

TEST_CASE("binary output is identical across processes") {
    const std::string cmd = std::string(MACC_CLI_PATH) +
                            " simulate --m 2 --b 4 --z 2 --topology random --seed 3 --payload 8";
    auto capture = [&]() {
        std::string text;
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 256> buf{};
        while (fgets(buf.data(), buf.size(), pipe) != nullptr) {
            text += buf.data();
        }
        CHECK(pclose(pipe) == 0);
        return text;
    };
    std::string first = capture();
    CHECK_FALSE(first.empty());
    CHECK(first == capture());
}
