#pragma once

// Executable form of the classification of prime-power squares among sums
// of consecutive cubes:
//
//   S(x,k) = (p^r)^2  has exactly the solutions
//   (x,k,p,r) = (p^(2c), 1, p, 3c)  and  (1, 2, 3, 1).
//
// classify() sorts any instance into that taxonomy; x1_solutions() settles
// the x = 1 line, where S(1,k) = tri(k)^2 and the question reduces to
// tri(k) = p^r; the lemma_* checkers validate the individual derivation
// steps on concrete numbers; replay_proof() runs the full case analysis for
// a hypothesis-satisfying instance and records every instantiated step.

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cubesum/cubes.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/exactmath.hpp"
#include "cubesum/pythagoras.hpp"
#include "cubesum/u128.hpp"
#include "cubesum/value_map.hpp"

namespace cubesum {

// ---------------------------------------------------------------------------
// certificates

struct NotASquare {
    U128 floor_root;
    friend bool operator==(const NotASquare&, const NotASquare&) = default;
};

// S = y^2 but y is 1 or has at least two distinct prime factors.
struct SquareNotPrimePower {
    U128 y;
    Factorization y_factors;  // empty when y = 1
    friend bool operator==(const SquareNotPrimePower&, const SquareNotPrimePower&) = default;
};

// k = 1, x = p^(2c), S = (p^(3c))^2
struct TrivialCubeFamily {
    U128 p;
    unsigned c;
    friend bool operator==(const TrivialCubeFamily&, const TrivialCubeFamily&) = default;
};

// (x,k) = (1,2): S = 9 = 3^2
struct TrivialOneTwo {
    friend bool operator==(const TrivialOneTwo&, const TrivialOneTwo&) = default;
};

// Tripwire: a prime-power square outside both trivial families.  No input
// can produce this; seeing it means either an implementation bug or a
// counterexample to the classification.
struct TheoremViolation {
    std::uint64_t x;
    std::uint64_t k;
    U128 s;
    U128 y;
    PrimePower form;
    friend bool operator==(const TheoremViolation&, const TheoremViolation&) = default;
};

using Certificate =
    std::variant<NotASquare, SquareNotPrimePower, TrivialCubeFamily, TrivialOneTwo, TheoremViolation>;

bool is_trivial(const Certificate& cert);
std::string_view certificate_name(const Certificate& cert);

// ---------------------------------------------------------------------------
// lemma reports

enum class LemmaId { PairingExponent, QBound, Congruence, ValuationEquality, TripleFormation };
std::string_view lemma_name(LemmaId id);

enum class KParity { Even, Odd };

struct LemmaReport {
    LemmaId lemma_id;
    ValueMap inputs;
    bool holds;
    ValueMap witness;
};

// ---------------------------------------------------------------------------
// proof traces

enum class StepStatus { Holds, Contradiction, BranchTaken };
std::string_view step_status_name(StepStatus s);

struct ProofStep {
    const char* tag;  // stable step label ("Eq5", "S3.2", ...)
    ValueMap values;
    StepStatus status;
};

struct TraceTrivial {
    Certificate certificate;
};
struct TraceContradiction {
    std::size_t step_index;
};
using TraceOutcome = std::variant<TraceTrivial, TraceContradiction>;

struct ProofTrace {
    std::vector<ProofStep> steps;
    TraceOutcome outcome;
};

// ---------------------------------------------------------------------------
// operations

// Full taxonomy for any instance.
Certificate classify(const CubeSumInstance& inst);

// All k <= k_limit with tri(k) a prime power; exactly [(2, (3,1))] for
// every k_limit >= 2.
std::vector<std::pair<std::uint64_t, PrimePower>> x1_solutions(std::uint64_t k_limit);

// Under the hypothesis S(inst) = p^(2r), the pairing divisor must be a
// power of p:  2x+k-1 = p^t (k even)  or  (2x+k-1)/2 = p^t (k odd), with
// 0 < t < 2r.  Returns t; throws hypothesis_violated_error otherwise.
unsigned pairing_prime_power_exponent(const CubeSumInstance& inst, U128 p, unsigned r);

// Non-throwing twin used by replay and by the report-level tests.
LemmaReport lemma_pairing_exponent(const CubeSumInstance& inst, U128 p, unsigned r);

// q = v_p(tri(x-1)) with q < t (even k) / q <= t (odd k), given the
// pairing identity p^t = 2x+2l-1 (even) or p^t = x+l-1 (odd) and x >= 2.
LemmaReport lemma_q_bound(U128 x, U128 l, U128 p, unsigned t, KParity parity);

// (p^t-x)(p^t-(x-1))/2 == tri(x-1) (mod p^t) for odd p, p^t >= 2x+1.
// An algebraic identity; holds is always true on admissible input.
LemmaReport lemma_congruence(U128 x, U128 p, unsigned t);

// v_p of the rewritten triangular term equals q = v_p(tri(x-1)), valid
// only under q < t.  Even case uses (p^t-x)(p^t-(x-1))/2, odd case
// (2p^t-x)(2p^t-(x-1))/2.
LemmaReport lemma_valuation_equality(U128 x, U128 p, unsigned t, KParity parity);

// Primitive-triple formation after dividing out p^(2q): the reduced
// (a, p^(r-q), b) is a primitive triple with recoverable generators.
LemmaReport lemma_triple_formation(const CubeSumInstance& inst, U128 p, unsigned r);

// Ordered replay of the full case analysis for x >= 2 under the verified
// hypothesis S(x,k) = p^(2r).  Throws hypothesis_violated_error if the
// hypothesis fails and x_equals_one_error for x = 1.
ProofTrace replay_proof(std::uint64_t x, std::uint64_t k, U128 p, unsigned r);

// The x = 1 line: tri(k) = p^r, solved only by (k,p,r) = (2,3,1).
ProofTrace x1_trace(std::uint64_t k, U128 p, unsigned r);

// replay_proof with x = 1 dispatched to x1_trace.
ProofTrace trace_instance(std::uint64_t x, std::uint64_t k, U128 p, unsigned r);

}  // namespace cubesum
