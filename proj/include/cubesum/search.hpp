#pragma once

// Bounded exhaustive search over instances (x,k): every S(x,k) that is a
// perfect square, or only those that are prime-power squares.  The sweep is
// deterministic: identical bounds and mode give identical output, whatever
// the worker count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubesum/cubes.hpp"
#include "cubesum/theorem.hpp"
#include "cubesum/u128.hpp"

namespace cubesum {

enum class SearchMode { AllSquares, PrimePowerOnly };

struct SearchConfig {
    std::uint64_t x_max = 1;
    std::uint64_t k_max = 1;
    std::optional<U128> s_max;       // cap on S; prunes k per x by monotonicity
    unsigned worker_count = 1;       // never affects results
    SearchMode mode = SearchMode::AllSquares;
};

void validate(const SearchConfig& cfg);

struct Solution {
    std::uint64_t x;
    std::uint64_t k;
    U128 s;
    U128 y;                            // y^2 = S
    std::optional<Factorization> y_factors;  // nullopt marks y = 1
    Certificate certificate;
};

struct XInterval {
    std::uint64_t lo;  // inclusive
    std::uint64_t hi;  // inclusive
    friend bool operator==(const XInterval&, const XInterval&) = default;
};

// Disjoint intervals covering [1, x_max] exactly once, balanced by the
// number of (x,k) cells left after s_max pruning.
std::vector<XInterval> partition_range(const SearchConfig& cfg);

// Solution record for an instance whose S is already known to be square;
// domain_error otherwise.
Solution solution_for(const CubeSumInstance& inst);

struct SweepOutcome {
    std::vector<Solution> solutions;  // sorted by (S, x, k)
    U128 scanned = 0;                 // cells evaluated after pruning
};

// Full sweep in either mode.
SweepOutcome run_search(const SearchConfig& cfg);

// All square S(x,k) in range, sorted by (S, x, k).
std::vector<Solution> search_squares(const SearchConfig& cfg);

struct VerificationReport {
    U128 scanned = 0;             // cells evaluated after pruning
    std::vector<Solution> hits;   // prime-power squares, sorted by (S, x, k)
    bool all_trivial = true;      // no hit outside the two trivial families
};

// Prime-power sweep: every hit must classify into a trivial family; a
// TheoremViolation hit flips all_trivial and carries full instance data.
VerificationReport verify_theorem(const SearchConfig& cfg);

}  // namespace cubesum
