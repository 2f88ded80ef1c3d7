#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "macsel/cpf.hpp"
#include "macsel/format.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

// Runs the CLI with a shell command line; stderr is discarded.
Result run(const std::string& args) {
    const std::string cmd = std::string(MACSEL_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const char* name) { return std::string(MACSEL_DATA_DIR) + "/" + name; }

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("macsel_cli_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* f) const { return (path / f).string(); }
};

const std::string kReq = "--require overhearing-avoidance,distributed";

}  // namespace

TEST_CASE("select on both scenarios") {
    auto s1 = run("select --registry " + data("registry.json") + " --context " + data("scenario1.json") + " " + kReq);
    CHECK(s1.code == 0);
    CHECK(s1.out.find("best category: ScP") != std::string::npos);
    CHECK(s1.out.find("protocols: SMACS, AS-MAC") != std::string::npos);
    CHECK(s1.out.find("feasible categories (by CPF): ScP > PSP") != std::string::npos);

    auto s2 = run("select --registry " + data("registry.json") + " --context " + data("scenario2.json") + " " + kReq);
    CHECK(s2.code == 0);
    CHECK(s2.out.find("best category: PSP") != std::string::npos);
    CHECK(s2.out.find("protocols: STEM") != std::string::npos);
}

TEST_CASE("registry from the environment") {
    CHECK(run("select --context " + data("scenario1.json") + " " + kReq).code == 2);
    const std::string cmd = "MACSEL_REGISTRY=" + data("registry.json") + " " + MACSEL_CLI_PATH +
                            " select --context " + data("scenario1.json") + " " + kReq + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    CHECK(WIFEXITED(st));
    CHECK(WEXITSTATUS(st) == 0);
}

TEST_CASE("evaluate prints a table and the best category") {
    auto r = run("evaluate --context " + data("scenario1.json"));
    CHECK(r.code == 0);
    CHECK(r.out.rfind("category", 0) == 0);
    CHECK(r.out.find("best: ScP") != std::string::npos);
}

TEST_CASE("evaluate JSON matches the library at full precision") {
    auto r = run("evaluate --json");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    auto evals = macsel::evaluate_all(macsel::NetworkContext{}, macsel::RadioProfile{}, macsel::Weights{});
    for (std::size_t i = 0; i < 3; ++i) CHECK(j["evaluations"][i]["cpf"].get<double>() == evals[i].cpf);
    CHECK(j["ranking"][0] == "ScP");
}

TEST_CASE("sweep writes CSV") {
    TempDir t;
    auto r = run("sweep --axis pkt_rate --from 0 --to 100 --steps 3 --out " + (t / "s.csv"));
    CHECK(r.code == 0);
    std::ifstream in(t / "s.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == macsel::kSweepCsvHeader);
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 9);

    auto out = run("sweep --axis n_nodes --from 10 --to 20 --steps 2");
    CHECK(out.code == 0);
    CHECK(out.out.find("\n10,ScP,") != std::string::npos);
}

TEST_CASE("usage and input errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("sweep --axis speed --from 0 --to 1 --steps 3").code == 2);
    CHECK(run("sweep --axis pkt_rate --from 1 --to 0 --steps 3").code == 2);
    CHECK(run("evaluate --alpha 0 --beta 0").code == 1);
    TempDir t;
    std::ofstream(t / "bad.json") << R"({"context": {"n_nodes": -4}})";
    std::ofstream(t / "broken.json") << "{";
    CHECK(run("evaluate --context " + (t / "bad.json")).code == 2);
    CHECK(run("evaluate --context " + (t / "broken.json")).code == 2);
    CHECK(run("select --registry " + data("registry.json") + " --require mobility").code == 1);
}

TEST_CASE("registry management") {
    TempDir t;
    const std::string reg = "--registry " + (t / "r.json");
    CHECK(run("registry " + reg + " init").code == 0);
    CHECK(run("registry " + reg + " init").code == 1);  // refuses to overwrite
    auto before = fs::file_size(t / "r.json");
    CHECK(run("registry " + reg + " add-protocol --name SMACS --category ScP").code == 1);
    CHECK(fs::file_size(t / "r.json") == before);
    CHECK(run("registry " + reg + " add-category --id HYB").code == 0);
    CHECK(run("registry " + reg + " add-protocol --name Z-MAC --category HYB --satisfies distributed").code == 0);
    auto add = run("registry " + reg + " add-requirement --id mobility");
    CHECK(add.code == 0);
    CHECK(add.out.find("1. ") != std::string::npos);
    auto list = run("registry " + reg + " list");
    CHECK(list.code == 0);
    CHECK(list.out.find("Z-MAC [HYB]") != std::string::npos);
    CHECK(list.out.find("mobility") != std::string::npos);
}

TEST_CASE("simulate and validate") {
    TempDir t;
    std::ofstream(t / "psa.json") << R"({
        "context": {"n_nodes": 30, "pkt_rate": 0},
        "simulation": {"area": {"width": 50, "height": 50}, "sim_duration": 10, "max_reps": 3,
                       "sweep_pkt_rates": [0]}})";
    auto s = run("simulate --protocol psa --config " + (t / "psa.json") + " --json --csv " + (t / "s.csv"));
    CHECK(s.code == 0);
    auto j = json::parse(s.out);
    CHECK(j["prng"] == "mt19937_64/splitmix64-derived");
    CHECK(j["packets"]["generated"] == 0);
    CHECK(fs::exists(t / "s.csv"));
    // same seed, same output
    CHECK(run("simulate --protocol psa --config " + (t / "psa.json") + " --json").out == s.out);

    auto v = run("validate --protocol psa --config " + (t / "psa.json"));
    CHECK(v.code == 0);
    CHECK(v.out.find("max energy divergence") != std::string::npos);
    CHECK(run("validate --protocol psa --config " + (t / "psa.json") + " --tolerance -1").code == 3);
    CHECK(run("simulate --protocol xmac").code == 2);
}
