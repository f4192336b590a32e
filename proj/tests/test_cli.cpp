#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const char* cli_path() {
    const char* p = std::getenv("CUBESUM_CLI");
    REQUIRE_MESSAGE(p != nullptr, "CUBESUM_CLI must point at the built binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

// runs the binary through the shell; cache defaults to disabled so tests
// never touch the real user cache
RunResult run(const std::string& args, const std::string& cache_dir = "") {
    std::string cmd = "CUBESUM_CACHE_DIR=" + (cache_dir.empty() ? std::string{} : cache_dir) +
                      " " + std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Json parse(const RunResult& r) {
    return Json::parse(r.out);
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("cubesum_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("sum reports S, the triangular pair and square status") {
    RunResult r = run("sum 23 3 --no-timing");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "sum");
    CHECK(j["inputs"]["x"] == "23");
    CHECK(j["result"]["s"] == "41616");
    CHECK(j["result"]["triangular_high"] == "325");
    CHECK(j["result"]["triangular_low"] == "253");
    CHECK(j["result"]["pairing_divisor"] == "24");
    CHECK(j["result"]["square"] == true);
    CHECK(j["result"]["y"] == "204");
    CHECK(j["result"]["prime_power"] == false);
    CHECK(!j.contains("timing_ms"));

    Json one = parse(run("sum 1 1 --no-timing"));
    CHECK(one["result"]["s"] == "1");
    CHECK(one["result"]["square"] == true);
    CHECK(one["result"]["prime_power"] == false);

    Json two = parse(run("sum 1 2 --no-timing"));
    CHECK(two["result"]["prime_power"]["p"] == "3");
    CHECK(two["result"]["prime_power"]["r"] == "1");

    Json ns = parse(run("sum 2 3 --no-timing"));
    CHECK(ns["result"]["s"] == "99");
    CHECK(ns["result"]["square"] == false);
    CHECK(!ns["result"].contains("y"));

    CHECK(parse(run("sum 5 4")).contains("timing_ms"));
}

TEST_CASE("classify maps instances onto the taxonomy") {
    CHECK(parse(run("classify 1 2 --no-timing"))["result"]["variant"] == "TrivialOneTwo");

    Json fam = parse(run("classify 9 1 --no-timing"));
    CHECK(fam["result"]["variant"] == "TrivialCubeFamily");
    CHECK(fam["result"]["p"] == "3");
    CHECK(fam["result"]["c"] == "1");

    Json snpp = parse(run("classify 25 5 --no-timing"));
    CHECK(snpp["result"]["variant"] == "SquareNotPrimePower");
    CHECK(snpp["result"]["y"] == "315");

    RunResult nsq = run("classify 2 3 --no-timing");
    CHECK(nsq.exit_code == 0);  // classification is never an error
    CHECK(parse(nsq)["result"]["variant"] == "NotASquare");
}

TEST_CASE("trace replays the derivation or exits 3") {
    RunResult r = run("trace 4 1 2 3 --no-timing");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["result"]["outcome"]["kind"] == "TrivialClassification");
    CHECK(j["result"]["outcome"]["certificate"]["variant"] == "TrivialCubeFamily");
    CHECK(j["result"]["outcome"]["certificate"]["c"] == "1");

    RunResult x1 = run("trace 1 2 3 1 --no-timing");
    CHECK(x1.exit_code == 0);
    Json jx = parse(x1);
    CHECK(jx["result"]["outcome"]["kind"] == "TrivialClassification");
    CHECK(jx["result"]["outcome"]["certificate"]["variant"] == "TrivialOneTwo");
    CHECK(jx["result"]["steps"][1]["tag"] == "S1.1");

    CHECK(run("trace 2 3 3 1 --no-timing").exit_code == 3);  // S = 99, not 9
    CHECK(run("trace 4 1 6 3 --no-timing").exit_code == 3);  // p not prime
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("sum 0 3").exit_code == 2);
    CHECK(run("sum 1").exit_code == 2);
    CHECK(run("sum x y").exit_code == 2);
    CHECK(run("nonsense 1 2").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("search --x-max 0 --k-max 5").exit_code == 2);
    CHECK(run("search --x-max 5").exit_code == 2);
    CHECK(run("search --x-max 5 --k-max 5 --mode everything").exit_code == 2);
    CHECK(run("search --x-max 5 --k-max 5 --s-max nope").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    CHECK(run("sum --help").exit_code == 0);
}

TEST_CASE("search emits the full solution list") {
    RunResult r = run("search --x-max 30 --k-max 5 --mode all-squares --no-timing");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["result"]["count"] == "11");
    CHECK(j["result"]["scanned"] == "150");
    CHECK(j["inputs"]["mode"] == "all-squares");
    CHECK(!j["inputs"].contains("s_max"));
    CHECK(j["result"]["solutions"][0]["x"] == "1");
    CHECK(j["result"]["solutions"][10]["y"] == "315");

    Json capped = parse(run("search --x-max 2 --k-max 2 --s-max 50 --no-timing"));
    CHECK(capped["inputs"]["s_max"] == "50");
    CHECK(capped["result"]["count"] == "2");
}

TEST_CASE("search output is byte-identical across worker counts") {
    fs::path a = fresh_dir("wk1");
    fs::path b = fresh_dir("wk8");
    RunResult r1 = run("search --x-max 200 --k-max 60 --mode prime-power-only --workers 1 --no-timing",
                       a.string());
    RunResult r8 = run("search --x-max 200 --k-max 60 --mode prime-power-only --workers 8 --no-timing",
                       b.string());
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r8.out);
}

TEST_CASE("verify exits 0 with only trivial hits") {
    RunResult r = run("verify --x-max 3 --k-max 3 --no-timing");
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["result"]["all_trivial"] == true);
    CHECK(j["result"]["hit_count"] == "1");
    CHECK(j["result"]["hits"][0]["x"] == "1");
    CHECK(j["result"]["hits"][0]["k"] == "2");
    CHECK(j["result"]["scanned"] == "9");

    Json small = parse(run("verify --x-max 1 --k-max 2 --no-timing"));
    CHECK(small["result"]["hit_count"] == "1");
    CHECK(small["result"]["hits"][0]["k"] == "2");
}

TEST_CASE("results files: table and json formats, io failures exit 4") {
    fs::path dir = fresh_dir("out");
    fs::path table = dir / "results.csv";
    RunResult r = run("search --x-max 30 --k-max 5 --mode all-squares --no-timing --out " +
                      table.string() + " --format table");
    CHECK(r.exit_code == 0);
    std::ifstream in(table);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.rfind("x,k,y,certificate,y_factorization\n", 0) == 0);
    CHECK(content.find("23,3,204,SquareNotPrimePower,2^2*3^1*17^1\n") != std::string::npos);
    CHECK(std::count(content.begin(), content.end(), '\n') == 12);  // header + 11 rows

    fs::path jf = dir / "results.json";
    RunResult rj = run("search --x-max 30 --k-max 5 --mode all-squares --no-timing --out " +
                       jf.string() + " --format json");
    CHECK(rj.exit_code == 0);
    std::ifstream jin(jf);
    Json payload = Json::parse(jin);
    CHECK(payload["count"] == "11");

    CHECK(run("search --x-max 5 --k-max 5 --out /nonexistent_dir_zz/x.csv").exit_code == 4);
    CHECK(run("verify --x-max 5 --k-max 5 --out /nonexistent_dir_zz/x.csv").exit_code == 4);
}

TEST_CASE("identical invocations are byte-identical and cache-served") {
    fs::path dir = fresh_dir("cache");
    std::string args = "verify --x-max 50 --k-max 50 --no-timing";
    RunResult first = run(args, dir.string());
    CHECK(first.exit_code == 0);

    // cache entry exists: one table plus one sidecar
    int csvs = 0, sidecars = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".csv") ++csvs;
        if (e.path().extension() == ".json") ++sidecars;
    }
    CHECK(csvs == 1);
    CHECK(sidecars == 1);

    RunResult second = run(args, dir.string());
    CHECK(second.exit_code == 0);
    CHECK(second.out == first.out);

    // a different config must not collide with the cached one
    RunResult other = run("verify --x-max 50 --k-max 49 --no-timing", dir.string());
    Json jo = parse(other);
    CHECK(jo["result"]["scanned"] == "2450");
}
