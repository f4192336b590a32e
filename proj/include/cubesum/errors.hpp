#pragma once

#include <stdexcept>
#include <string>

namespace cubesum {

// Arithmetic left the representable range [0, 2^128).  Exact arithmetic
// never wraps; callers that probe near capacity catch this instead.
class overflow_error : public std::overflow_error {
public:
    explicit overflow_error(const std::string& what) : std::overflow_error(what) {}
};

// Input outside an operation's stated domain (v_p(0), factorize(n<2),
// zero triple members, invalid instance bounds, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// cube_sum_naive asked to sum more terms than its oracle cap allows.
class oracle_limit_error : public std::runtime_error {
public:
    explicit oracle_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// A triple handed to recover_params is not primitive.
class not_primitive_error : public std::runtime_error {
public:
    explicit not_primitive_error(const std::string& what) : std::runtime_error(what) {}
};

// The three values do not satisfy A^2 = B^2 + C^2.
class not_a_triple_error : public std::runtime_error {
public:
    explicit not_a_triple_error(const std::string& what) : std::runtime_error(what) {}
};

// The caller-asserted hypothesis S(x,k) = p^(2r) (or a quantity it forces,
// such as the pairing divisor being a power of p in range) does not hold.
class hypothesis_violated_error : public std::runtime_error {
public:
    explicit hypothesis_violated_error(const std::string& what) : std::runtime_error(what) {}
};

// A lemma checker was invoked outside the regime in which its statement
// is derived (e.g. valuation equality with q >= t).
class precondition_violated_error : public std::runtime_error {
public:
    explicit precondition_violated_error(const std::string& what) : std::runtime_error(what) {}
};

// replay_proof received x = 1; the x = 1 family is handled by the
// triangular-number path (x1_solutions / x1_trace), not the triple replay.
class x_equals_one_error : public std::runtime_error {
public:
    explicit x_equals_one_error(const std::string& what) : std::runtime_error(what) {}
};

// A quantity the derivation guarantees failed to hold numerically.
// Reaching this is a bug in this library, never an input error.
class internal_inconsistency_error : public std::logic_error {
public:
    explicit internal_inconsistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace cubesum
