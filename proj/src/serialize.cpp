#include "cubesum/serialize.hpp"

namespace cubesum {

Json to_json(const ValueMap& m) {
    Json j = Json::object();
    for (const auto& entry : m) j[entry.key] = entry.value.str();
    return j;
}

Json to_json(const Factorization& f) { return f.str(); }

namespace {

std::string factor_field(U128 y, const std::optional<Factorization>& f) {
    if (y == 1 || !f) return "one";
    return f->str();
}

}  // namespace

Json to_json(const Certificate& cert) {
    Json j = Json::object();
    j["variant"] = std::string(certificate_name(cert));
    if (const auto* ns = std::get_if<NotASquare>(&cert)) {
        j["floor_root"] = ns->floor_root.str();
    } else if (const auto* np = std::get_if<SquareNotPrimePower>(&cert)) {
        j["y"] = np->y.str();
        j["y_factorization"] = np->y == 1 ? "one" : np->y_factors.str();
    } else if (const auto* fam = std::get_if<TrivialCubeFamily>(&cert)) {
        j["p"] = fam->p.str();
        j["c"] = std::to_string(fam->c);
    } else if (const auto* tv = std::get_if<TheoremViolation>(&cert)) {
        j["x"] = U128(tv->x).str();
        j["k"] = U128(tv->k).str();
        j["s"] = tv->s.str();
        j["y"] = tv->y.str();
        j["p"] = tv->form.p.str();
        j["r"] = std::to_string(tv->form.r);
    }
    return j;
}

Json to_json(const LemmaReport& report) {
    Json j = Json::object();
    j["lemma"] = std::string(lemma_name(report.lemma_id));
    j["inputs"] = to_json(report.inputs);
    j["holds"] = report.holds;
    j["witness"] = to_json(report.witness);
    return j;
}

Json to_json(const ProofTrace& trace) {
    Json j = Json::object();
    Json steps = Json::array();
    for (const ProofStep& st : trace.steps) {
        Json s = Json::object();
        s["tag"] = st.tag;
        s["status"] = std::string(step_status_name(st.status));
        s["values"] = to_json(st.values);
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    Json outcome = Json::object();
    if (const auto* triv = std::get_if<TraceTrivial>(&trace.outcome)) {
        outcome["kind"] = "TrivialClassification";
        outcome["certificate"] = to_json(triv->certificate);
    } else {
        outcome["kind"] = "Contradiction";
        outcome["step_index"] = std::to_string(std::get<TraceContradiction>(trace.outcome).step_index);
    }
    j["outcome"] = std::move(outcome);
    return j;
}

Json to_json(const Solution& sol) {
    Json j = Json::object();
    j["x"] = U128(sol.x).str();
    j["k"] = U128(sol.k).str();
    j["s"] = sol.s.str();
    j["y"] = sol.y.str();
    j["y_factorization"] = factor_field(sol.y, sol.y_factors);
    j["certificate"] = to_json(sol.certificate);
    return j;
}

Json to_json(const VerificationReport& report) {
    Json j = Json::object();
    j["scanned"] = report.scanned.str();
    j["hit_count"] = U128(report.hits.size()).str();
    j["all_trivial"] = report.all_trivial;
    Json hits = Json::array();
    for (const Solution& sol : report.hits) hits.push_back(to_json(sol));
    j["hits"] = std::move(hits);
    return j;
}

std::string solutions_table(const std::vector<Solution>& sols) {
    std::string out = "x,k,y,certificate,y_factorization\n";
    for (const Solution& sol : sols) {
        out += U128(sol.x).str();
        out += ',';
        out += U128(sol.k).str();
        out += ',';
        out += sol.y.str();
        out += ',';
        out += certificate_name(sol.certificate);
        out += ',';
        out += factor_field(sol.y, sol.y_factors);
        out += '\n';
    }
    return out;
}

std::string mode_token(SearchMode mode) {
    return mode == SearchMode::AllSquares ? "all-squares" : "prime-power-only";
}

std::optional<SearchMode> parse_mode(const std::string& token) {
    if (token == "all-squares") return SearchMode::AllSquares;
    if (token == "prime-power-only") return SearchMode::PrimePowerOnly;
    return std::nullopt;
}

std::string canonical_config_string(const SearchConfig& cfg) {
    std::string s = "schema=";
    s += std::to_string(kSchemaVersion);
    s += ";x_max=" + U128(cfg.x_max).str();
    s += ";k_max=" + U128(cfg.k_max).str();
    s += ";s_max=" + (cfg.s_max ? cfg.s_max->str() : std::string{});
    s += ";mode=" + mode_token(cfg.mode);
    return s;
}

std::string config_hash(const SearchConfig& cfg) {
    std::string s = canonical_config_string(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

Json to_json(const Envelope& env) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["command"] = env.command;
    j["inputs"] = env.inputs;
    j["result"] = env.result;
    if (env.timing_ms) j["timing_ms"] = *env.timing_ms;
    return j;
}

}  // namespace cubesum
