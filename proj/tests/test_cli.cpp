#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdist/cli.hpp"
#include "gdist/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "gdist");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = gdist::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() /
               ("gdist_cli_" + name + "_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

json without_metadata(json doc) {
    doc.erase("metadata");
    return doc;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("cluster W1..W4 with dsc") {
    const Run r = run({"cluster", "--algorithm", "dsc", "--graphons", "W1,W2,W3,W4", "--per", "10",
                       "--nmin", "50", "--nmax", "100", "--K", "4", "--seed", "7"});
    REQUIRE(r.status == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["command"] == "cluster");
    CHECK(doc["result"]["labels"].size() == 40);
    CHECK(doc["result"]["error"].get<double>() <= 0.05);
    CHECK(doc["result"]["n0"] == 5);
    // W4 fails the degree monotonicity diagnostic.
    CHECK(r.err.find("W4") != std::string::npos);
}

TEST_CASE("identical config gives identical output") {
    const std::vector<std::string> args{"cluster", "--algorithm", "ssdp", "--graphons", "W1,W3",
                                        "--per", "5", "--seed", "3"};
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.status == 0);
    CHECK(without_metadata(json::parse(a.out)).dump() == without_metadata(json::parse(b.out)).dump());
    CHECK(json::parse(a.out)["result"].contains("diagnostics"));
}

TEST_CASE("sample, then cluster from the manifest") {
    TempDir tmp("sample");
    const Run s = run({"sample", "--graphons", "W1,W2", "--per", "4", "--seed", "5", "--out-dir",
                       tmp.path.string()});
    REQUIRE(s.status == 0);
    CHECK(fs::exists(tmp.path / "manifest.json"));
    const Run c = run({"cluster", "--manifest", (tmp.path / "manifest.json").string(), "--seed",
                       "5", "--out", (tmp.path / "result.json").string()});
    REQUIRE(c.status == 0);
    std::ifstream in(tmp.path / "result.json");
    const json doc = json::parse(in);
    CHECK(doc["result"]["true_labels"] == json::array({0, 0, 0, 0, 1, 1, 1, 1}));
    CHECK(doc["result"]["k"] == 2);
}

TEST_CASE("distance and test on duplicate files") {
    TempDir tmp("dup");
    const fs::path f = tmp.path / "g.txt";
    {
        std::ofstream out(f);
        out << "n=30\n";
        for (int i = 0; i < 30; ++i)
            for (int j = i + 1; j < 30; ++j)
                if ((i * 7 + j * 3) % 5 == 0) out << i << ' ' << j << '\n';
    }
    const Run d = run({"distance", "--n0", "3", f.string(), f.string()});
    REQUIRE(d.status == 0);
    CHECK(d.out == "0,0\n0,0\n");

    const Run t = run({"test", f.string(), f.string(), "--bootstrap", "40"});
    REQUIRE(t.status == 0);
    const json doc = json::parse(t.out);
    CHECK(doc["result"]["p_value"] == 1.0);
    CHECK(doc["result"]["reject"] == false);
    CHECK(doc["result"]["statistic"] == 0.0);
}

TEST_CASE("errors are one JSON line with a kind") {
    const Run bad = run({"cluster", "--graphons", "W9", "--K", "2"});
    CHECK(bad.status == 1);
    const json e = json::parse(bad.err.substr(bad.err.find('{')));
    CHECK(e["error"]["kind"] == "input");

    const Run usage = run({"cluster", "--no-such-flag"});
    CHECK(usage.status == 2);
    CHECK(json::parse(usage.err)["error"]["kind"] == "usage");

    const Run size = run({"cluster", "--graphons", "W1,W2", "--per", "2", "--K", "9"});
    CHECK(size.status == 1);
    CHECK(json::parse(size.err)["error"]["kind"] == "size");

    const Run missing = run({"distance", "/nonexistent/graph.txt", "/nonexistent/other.txt"});
    CHECK(missing.status == 1);
    CHECK(json::parse(missing.err)["error"]["kind"] == "io");

    CHECK(run({"--version"}).status == 0);
    CHECK(run({"--help"}).status == 0);
}

TEST_CASE("thread count falls back to the environment") {
    gdist::set_thread_count(0);
    ::setenv("GRAPHON_DIST_THREADS", "3", 1);
    CHECK(gdist::thread_count() == 3);
    gdist::set_thread_count(2);
    CHECK(gdist::thread_count() == 2);
    gdist::set_thread_count(0);
    ::unsetenv("GRAPHON_DIST_THREADS");
    CHECK(gdist::thread_count() >= 1);
}

TEST_CASE("small power run") {
    const Run p = run({"power", "--graphons", "W1,W4", "--n", "50", "--n0", "5", "--trials", "20",
                       "--bootstrap", "20", "--seed", "2"});
    REQUIRE(p.status == 0);
    const json doc = json::parse(p.out);
    CHECK(doc["result"]["power"].size() == 2);
}

}
