// Command-line front end: evaluate instances, classify them, replay the
// case analysis, and run bounded searches, all with machine-readable
// envelopes on stdout.
//
// Exit codes: 0 success, 2 usage or validation error, 3 hypothesis
// violation, 4 output I/O failure, 5 theorem tripwire.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cubesum/search.hpp"
#include "cubesum/serialize.hpp"
#include "cubesum/theorem.hpp"

namespace fs = std::filesystem;
using namespace cubesum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitIo = 4;
constexpr int kExitTripwire = 5;

int exit_code_for_verification(const VerificationReport& report) {
    return report.all_trivial ? kExitOk : kExitTripwire;
}

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::uint64_t elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start;
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
    }
};

void emit(const Envelope& env) { std::cout << to_json(env).dump(2) << "\n"; }

Json config_inputs(const SearchConfig& cfg) {
    Json j = Json::object();
    j["x_max"] = U128(cfg.x_max).str();
    j["k_max"] = U128(cfg.k_max).str();
    if (cfg.s_max) j["s_max"] = cfg.s_max->str();
    j["mode"] = mode_token(cfg.mode);
    return j;
}

// ---------------------------------------------------------------------------
// results cache: <dir>/<config-hash>.csv holds the tabular solutions,
// <dir>/<config-hash>.json a sidecar with the canonical config and the
// scanned-cell count.  Best effort: any anomaly just means a fresh sweep.

std::optional<fs::path> cache_dir() {
    if (const char* d = std::getenv("CUBESUM_CACHE_DIR")) {
        if (*d == '\0') return std::nullopt;
        return fs::path(d);
    }
    if (const char* x = std::getenv("XDG_CACHE_HOME")) {
        if (*x != '\0') return fs::path(x) / "cubesum";
    }
    if (const char* h = std::getenv("HOME")) {
        if (*h != '\0') return fs::path(h) / ".cache" / "cubesum";
    }
    return std::nullopt;
}

std::optional<SweepOutcome> cache_load(const SearchConfig& cfg) {
    auto dir = cache_dir();
    if (!dir) return std::nullopt;
    fs::path csv = *dir / (config_hash(cfg) + ".csv");
    fs::path sidecar = *dir / (config_hash(cfg) + ".json");
    std::ifstream side_in(sidecar);
    std::ifstream csv_in(csv);
    if (!side_in || !csv_in) return std::nullopt;
    try {
        Json meta = Json::parse(side_in);
        if (meta.value("schema_version", 0) != kSchemaVersion) return std::nullopt;
        Json result = meta.value("result", Json::object());
        if (result.value("config", "") != canonical_config_string(cfg)) return std::nullopt;
        auto scanned = U128::parse(result.value("scanned", ""));
        if (!scanned) return std::nullopt;

        SweepOutcome out;
        out.scanned = *scanned;
        std::string line;
        if (!std::getline(csv_in, line)) return std::nullopt;  // header
        while (std::getline(csv_in, line)) {
            if (line.empty()) continue;
            auto c1 = line.find(',');
            auto c2 = line.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos) return std::nullopt;
            auto x = U128::parse(line.substr(0, c1));
            auto k = U128::parse(line.substr(c1 + 1, c2 - c1 - 1));
            if (!x || !k || !x->fits_u64() || !k->fits_u64()) return std::nullopt;
            out.solutions.push_back(solution_for({x->to_u64(), k->to_u64()}));
        }
        std::sort(out.solutions.begin(), out.solutions.end(),
                  [](const Solution& a, const Solution& b) {
                      if (a.s != b.s) return a.s < b.s;
                      if (a.x != b.x) return a.x < b.x;
                      return a.k < b.k;
                  });
        return out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void cache_store(const SearchConfig& cfg, const SweepOutcome& outcome) {
    auto dir = cache_dir();
    if (!dir) return;
    try {
        fs::create_directories(*dir);
        std::ofstream csv(*dir / (config_hash(cfg) + ".csv"));
        csv << solutions_table(outcome.solutions);
        Json result = Json::object();
        result["config"] = canonical_config_string(cfg);
        result["scanned"] = outcome.scanned.str();
        Envelope side_env{"search-cache", config_inputs(cfg), std::move(result), std::nullopt};
        std::ofstream side(*dir / (config_hash(cfg) + ".json"));
        side << to_json(side_env).dump(2) << "\n";
        if (!csv || !side) throw std::runtime_error("short write");
    } catch (const std::exception& e) {
        std::cerr << "warning: results cache not written: " << e.what() << "\n";
    }
}

SweepOutcome run_search_cached(const SearchConfig& cfg) {
    if (auto cached = cache_load(cfg)) {
        std::cerr << "note: results served from cache entry " << config_hash(cfg) << "\n";
        return std::move(*cached);
    }
    SweepOutcome outcome = run_search(cfg);
    cache_store(cfg, outcome);
    return outcome;
}

// ---------------------------------------------------------------------------

struct SearchCliArgs {
    std::uint64_t x_max = 0;
    std::uint64_t k_max = 0;
    std::string s_max;
    std::string mode = "all-squares";
    unsigned workers = 1;
    std::string out_path;
    std::string format = "json";
};

void add_search_options(CLI::App* cmd, SearchCliArgs& args, bool with_mode) {
    cmd->add_option("--x-max", args.x_max, "largest first base x")->required();
    cmd->add_option("--k-max", args.k_max, "largest term count k")->required();
    cmd->add_option("--s-max", args.s_max, "cap on S(x,k)");
    if (with_mode)
        cmd->add_option("--mode", args.mode, "all-squares or prime-power-only")
            ->check(CLI::IsMember({"all-squares", "prime-power-only"}));
    cmd->add_option("--workers", args.workers, "worker count (never affects results)");
    cmd->add_option("--out", args.out_path, "write results to this file");
    cmd->add_option("--format", args.format, "results file format")
        ->check(CLI::IsMember({"json", "table"}));
}

std::optional<SearchConfig> build_config(const SearchCliArgs& args, SearchMode mode) {
    SearchConfig cfg;
    cfg.x_max = args.x_max;
    cfg.k_max = args.k_max;
    cfg.worker_count = args.workers;
    cfg.mode = mode;
    if (!args.s_max.empty()) {
        auto s = U128::parse(args.s_max);
        if (!s) return std::nullopt;
        cfg.s_max = *s;
    }
    return cfg;
}

// --out writer; the chosen format carries either the result payload or the
// solutions table
int write_results_file(const std::string& path, const std::string& format,
                       const Json& result, const std::vector<Solution>& sols) {
    if (path.empty()) return kExitOk;
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitIo;
    }
    if (format == "table") {
        out << solutions_table(sols);
    } else {
        out << result.dump(2) << "\n";
    }
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing output file: " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// subcommand bodies

int cmd_sum(std::uint64_t x, std::uint64_t k, bool no_timing) {
    Clock clock;
    CubeSumInstance inst{x, k};
    validate(inst);
    U128 s = cube_sum(inst);
    TriangularPair pair = triangular_pair(inst);
    auto [root, exact] = isqrt(s);

    Json result = Json::object();
    result["s"] = s.str();
    result["triangular_high"] = pair.high.str();
    result["triangular_low"] = pair.low.str();
    result["pairing_divisor"] = pairing_divisor(inst).str();
    result["square"] = exact;
    if (exact) {
        result["y"] = root.str();
        std::optional<PrimePower> pp;
        if (root >= 2) pp = prime_power_form(root);
        if (pp) {
            Json j = Json::object();
            j["p"] = pp->p.str();
            j["r"] = std::to_string(pp->r);
            result["prime_power"] = std::move(j);
        } else {
            result["prime_power"] = false;
        }
    }

    Envelope env{"sum", Json{{"x", U128(x).str()}, {"k", U128(k).str()}}, std::move(result),
                 no_timing ? std::nullopt : std::optional<std::uint64_t>(clock.elapsed_ms())};
    emit(env);
    return kExitOk;
}

int cmd_classify(std::uint64_t x, std::uint64_t k, bool no_timing) {
    Clock clock;
    Certificate cert = classify({x, k});
    Envelope env{"classify", Json{{"x", U128(x).str()}, {"k", U128(k).str()}}, to_json(cert),
                 no_timing ? std::nullopt : std::optional<std::uint64_t>(clock.elapsed_ms())};
    emit(env);
    return kExitOk;
}

int cmd_trace(std::uint64_t x, std::uint64_t k, const std::string& p_str, unsigned r,
              bool no_timing) {
    Clock clock;
    auto p = U128::parse(p_str);
    if (!p) {
        std::cerr << "error: p must be a decimal integer\n";
        return kExitUsage;
    }
    ProofTrace trace;
    try {
        trace = trace_instance(x, k, *p, r);
    } catch (const hypothesis_violated_error& e) {
        std::cerr << "error: hypothesis violated: " << e.what() << "\n";
        return kExitHypothesis;
    }
    Json inputs{{"x", U128(x).str()},
                {"k", U128(k).str()},
                {"p", p->str()},
                {"r", std::to_string(r)}};
    Envelope env{"trace", std::move(inputs), to_json(trace),
                 no_timing ? std::nullopt : std::optional<std::uint64_t>(clock.elapsed_ms())};
    emit(env);
    return kExitOk;
}

int cmd_search(const SearchCliArgs& args, bool no_timing) {
    Clock clock;
    auto mode = parse_mode(args.mode);
    auto cfg = mode ? build_config(args, *mode) : std::nullopt;
    if (!cfg) {
        std::cerr << "error: invalid search configuration\n";
        return kExitUsage;
    }
    validate(*cfg);
    SweepOutcome outcome = run_search_cached(*cfg);

    Json result = Json::object();
    result["mode"] = mode_token(cfg->mode);
    result["scanned"] = outcome.scanned.str();
    result["count"] = U128(outcome.solutions.size()).str();
    Json sols = Json::array();
    for (const Solution& sol : outcome.solutions) sols.push_back(to_json(sol));
    result["solutions"] = std::move(sols);

    int io = write_results_file(args.out_path, args.format, result, outcome.solutions);
    if (io != kExitOk) return io;

    Envelope env{"search", config_inputs(*cfg), std::move(result),
                 no_timing ? std::nullopt : std::optional<std::uint64_t>(clock.elapsed_ms())};
    emit(env);
    return kExitOk;
}

int cmd_verify(const SearchCliArgs& args, bool no_timing) {
    Clock clock;
    auto cfg = build_config(args, SearchMode::PrimePowerOnly);
    if (!cfg) {
        std::cerr << "error: invalid search configuration\n";
        return kExitUsage;
    }
    validate(*cfg);
    SweepOutcome outcome = run_search_cached(*cfg);
    VerificationReport report;
    report.scanned = outcome.scanned;
    report.hits = std::move(outcome.solutions);
    for (const Solution& sol : report.hits) {
        if (!is_trivial(sol.certificate)) report.all_trivial = false;
    }

    Json result = to_json(report);
    int io = write_results_file(args.out_path, args.format, result, report.hits);
    if (io != kExitOk) return io;

    Envelope env{"verify", config_inputs(*cfg), std::move(result),
                 no_timing ? std::nullopt : std::optional<std::uint64_t>(clock.elapsed_ms())};
    emit(env);
    return exit_code_for_verification(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact evaluation, classification and search for sums of "
                 "consecutive cubes that are perfect squares"};
    app.require_subcommand(1);
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "omit timing_ms from envelopes");

    std::uint64_t x = 0, k = 0;
    std::string p_str;
    unsigned r = 0;

    auto* sum = app.add_subcommand("sum", "evaluate S(x,k) and its square status");
    sum->add_option("x", x, "first base")->required();
    sum->add_option("k", k, "term count")->required();

    auto* classify_cmd = app.add_subcommand("classify", "classify an instance");
    classify_cmd->add_option("x", x, "first base")->required();
    classify_cmd->add_option("k", k, "term count")->required();

    auto* trace = app.add_subcommand("trace", "replay the case analysis for S(x,k) = p^(2r)");
    trace->add_option("x", x, "first base")->required();
    trace->add_option("k", k, "term count")->required();
    trace->add_option("p", p_str, "prime")->required();
    trace->add_option("r", r, "exponent, S = p^(2r)")->required();

    SearchCliArgs search_args;
    auto* search = app.add_subcommand("search", "sweep a rectangle of instances");
    add_search_options(search, search_args, true);

    SearchCliArgs verify_args;
    auto* verify = app.add_subcommand("verify", "prime-power sweep with tripwire exit code");
    add_search_options(verify, verify_args, false);

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sum->parsed()) return cmd_sum(x, k, no_timing);
        if (classify_cmd->parsed()) return cmd_classify(x, k, no_timing);
        if (trace->parsed()) return cmd_trace(x, k, p_str, r, no_timing);
        if (search->parsed()) return cmd_search(search_args, no_timing);
        if (verify->parsed()) return cmd_verify(verify_args, no_timing);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
