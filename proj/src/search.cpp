#include "cubesum/search.hpp"

#include <algorithm>
#include <array>
#include <thread>

namespace cubesum {

void validate(const SearchConfig& cfg) {
    if (cfg.x_max < 1 || cfg.k_max < 1) throw domain_error("search bounds must be >= 1");
    if (cfg.worker_count < 1) throw domain_error("worker_count must be >= 1");
    if (cfg.s_max && cfg.s_max->is_zero()) throw domain_error("s_max must be >= 1");
}

namespace {

using u64 = std::uint64_t;

// Non-squares are rejected by their residue mod 64 and mod 45045 = 63*65*11
// before any isqrt runs; the two tables together pass fewer than 1 in 200
// non-squares through.
struct ResidueFilter {
    std::array<bool, 64> mod64{};
    std::vector<bool> mod45045;
    ResidueFilter() : mod45045(45045, false) {
        for (u64 i = 0; i < 64; ++i) mod64[(i * i) % 64] = true;
        for (u64 i = 0; i < 45045; ++i) mod45045[(i * i) % 45045] = true;
    }
    bool maybe_square(U128 s) const {
        if (!mod64[static_cast<u64>(s.raw()) & 63]) return false;
        return mod45045[static_cast<u64>(s.raw() % 45045)];
    }
};

const ResidueFilter& residue_filter() {
    static const ResidueFilter f;
    return f;
}

// Prime powers up to the largest pairing divisor in range, as a bitmap.
// Sweeps whose divisors exceed the table cap fall back to direct checks.
class PrimePowerTable {
public:
    static constexpr u64 kTableCap = u64{1} << 27;

    explicit PrimePowerTable(U128 d_max) {
        if (d_max > kTableCap) return;
        u64 n = d_max.to_u64();
        std::vector<bool> composite(n + 1, false);
        bits_.assign(n + 1, false);
        for (u64 p = 2; p <= n; ++p) {
            if (composite[p]) continue;
            for (u64 m = p * p; m <= n; m += p) composite[m] = true;
            for (u64 pw = p; pw <= n; pw = pw > n / p ? n + 1 : pw * p) bits_[pw] = true;
        }
        enabled_ = true;
    }

    bool contains(U128 d) const {
        if (enabled_) return bits_[d.to_u64()];
        return prime_power_form(d).has_value();
    }

private:
    std::vector<bool> bits_;
    bool enabled_ = false;
};

struct RawHit {
    u64 x;
    u64 k;
    U128 s;
    U128 y;
};

struct SweepResult {
    std::vector<RawHit> hits;
    U128 scanned = 0;
};

// One x-interval of the sweep.  S(x,k) accumulates term by term in k; the
// pairing-divisor filter (prime-power mode) and the residue filter both run
// before any isqrt.
SweepResult sweep(const SearchConfig& cfg, XInterval iv, const PrimePowerTable* pp_table) {
    const ResidueFilter& rf = residue_filter();
    const bool pp_mode = cfg.mode == SearchMode::PrimePowerOnly;
    SweepResult out;
    for (u64 x = iv.lo; x <= iv.hi; ++x) {
        U128 s = 0;
        U128 cells = 0;
        for (u64 k = 1; k <= cfg.k_max; ++k) {
            U128 base = U128(x) + (k - 1);
            try {
                s += base * base * base;
            } catch (const overflow_error&) {
                if (cfg.s_max) break;  // past the cap for sure; sound to prune
                throw;
            }
            if (cfg.s_max && s > *cfg.s_max) break;
            cells += 1;
            if (pp_mode && pp_table) {
                U128 d = 2 * U128(x) + (k - 1);  // pairing divisor, halved for odd k
                if (k % 2 != 0) d = d >> 1;
                if (d != 1 && !pp_table->contains(d)) continue;
            }
            if (!rf.maybe_square(s)) continue;
            auto [root, exact] = isqrt(s);
            if (!exact) continue;
            if (pp_mode && (root < 2 || !prime_power_form(root))) continue;
            out.hits.push_back({x, k, s, root});
        }
        out.scanned += cells;
    }
    return out;
}

SweepResult run_workers(const SearchConfig& cfg) {
    validate(cfg);
    std::optional<PrimePowerTable> table;
    if (cfg.mode == SearchMode::PrimePowerOnly) {
        table.emplace(2 * U128(cfg.x_max) + (U128(cfg.k_max) - 1));
    }

    std::vector<XInterval> intervals = partition_range(cfg);
    std::vector<SweepResult> results(intervals.size());
    if (intervals.size() == 1) {
        results[0] = sweep(cfg, intervals[0], table ? &*table : nullptr);
    } else {
        std::vector<std::exception_ptr> errors(intervals.size());
        std::vector<std::thread> threads;
        threads.reserve(intervals.size());
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            threads.emplace_back([&, i] {
                try {
                    results[i] = sweep(cfg, intervals[i], table ? &*table : nullptr);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto& th : threads) th.join();
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    SweepResult merged;
    for (auto& r : results) {
        merged.scanned += r.scanned;
        merged.hits.insert(merged.hits.end(), r.hits.begin(), r.hits.end());
    }
    std::sort(merged.hits.begin(), merged.hits.end(), [](const RawHit& a, const RawHit& b) {
        if (a.s != b.s) return a.s < b.s;
        if (a.x != b.x) return a.x < b.x;
        return a.k < b.k;
    });
    return merged;
}

}  // namespace

std::vector<XInterval> partition_range(const SearchConfig& cfg) {
    validate(cfg);

    // per-x work estimate: k cells surviving the s_max cap
    auto weight = [&cfg](u64 x) -> U128 {
        if (!cfg.s_max) return cfg.k_max;
        try {
            U128 low = triangular(U128(x) - 1);
            U128 top = isqrt(*cfg.s_max + low * low).root;
            U128 n = triangular_floor_inverse(top);
            if (n < x) return 0;
            U128 cap = n - x + 1;
            return cap > cfg.k_max ? U128(cfg.k_max) : cap;
        } catch (const overflow_error&) {
            return cfg.k_max;  // estimate only; the sweep prunes exactly
        }
    };

    U128 total = 0;
    for (u64 x = 1; x <= cfg.x_max; ++x) total += weight(x);

    u64 workers = std::min<u64>(cfg.worker_count, cfg.x_max);
    std::vector<XInterval> out;
    U128 remaining = total;
    U128 acc = 0;
    u64 lo = 1;
    for (u64 x = 1; x <= cfg.x_max; ++x) {
        acc += weight(x);
        u64 workers_left = workers - out.size();
        if (workers_left > 1 && x < cfg.x_max &&
            acc >= (remaining + (workers_left - 1)) / workers_left) {
            out.push_back({lo, x});
            lo = x + 1;
            remaining -= acc;
            acc = 0;
        }
    }
    out.push_back({lo, cfg.x_max});
    return out;
}

Solution solution_for(const CubeSumInstance& inst) {
    validate(inst);
    Solution sol;
    sol.x = inst.x;
    sol.k = inst.k;
    sol.s = cube_sum(inst);
    auto [root, exact] = isqrt(sol.s);
    if (!exact) throw domain_error("solution_for requires a square S(x,k)");
    sol.y = root;
    if (root > 1) sol.y_factors = factorize(root);
    sol.certificate = classify(inst);
    return sol;
}

SweepOutcome run_search(const SearchConfig& cfg) {
    SweepResult merged = run_workers(cfg);
    SweepOutcome out;
    out.scanned = merged.scanned;
    out.solutions.reserve(merged.hits.size());
    for (const RawHit& hit : merged.hits) out.solutions.push_back(solution_for({hit.x, hit.k}));
    return out;
}

std::vector<Solution> search_squares(const SearchConfig& cfg) {
    return run_search(cfg).solutions;
}

VerificationReport verify_theorem(const SearchConfig& cfg) {
    if (cfg.mode != SearchMode::PrimePowerOnly)
        throw domain_error("verify_theorem requires prime-power mode");
    SweepOutcome out = run_search(cfg);
    VerificationReport report;
    report.scanned = out.scanned;
    report.hits = std::move(out.solutions);
    for (const Solution& sol : report.hits) {
        if (!is_trivial(sol.certificate)) report.all_trivial = false;
    }
    return report;
}

}  // namespace cubesum
