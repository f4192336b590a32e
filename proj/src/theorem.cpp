#include "cubesum/theorem.hpp"

#include <algorithm>

namespace cubesum {

bool is_trivial(const Certificate& cert) {
    return std::holds_alternative<TrivialCubeFamily>(cert) ||
           std::holds_alternative<TrivialOneTwo>(cert);
}

std::string_view certificate_name(const Certificate& cert) {
    switch (cert.index()) {
        case 0: return "NotASquare";
        case 1: return "SquareNotPrimePower";
        case 2: return "TrivialCubeFamily";
        case 3: return "TrivialOneTwo";
        default: return "TheoremViolation";
    }
}

std::string_view lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::PairingExponent: return "PairingExponent";
        case LemmaId::QBound: return "QBound";
        case LemmaId::Congruence: return "Congruence";
        case LemmaId::ValuationEquality: return "ValuationEquality";
        default: return "TripleFormation";
    }
}

std::string_view step_status_name(StepStatus s) {
    switch (s) {
        case StepStatus::Holds: return "holds";
        case StepStatus::Contradiction: return "contradiction";
        default: return "branch_taken";
    }
}

// ---------------------------------------------------------------------------

Certificate classify(const CubeSumInstance& inst) {
    validate(inst);
    U128 s = cube_sum(inst);
    auto [root, exact] = isqrt(s);
    if (!exact) return NotASquare{root};
    if (root == 1) return SquareNotPrimePower{root, {}};
    auto pp = prime_power_form(root);
    if (!pp) return SquareNotPrimePower{root, factorize(root)};
    if (inst.x == 1 && inst.k == 2) return TrivialOneTwo{};
    if (inst.k == 1 && pp->r % 3 == 0) {
        unsigned c = pp->r / 3;
        if (U128(inst.x) == checked_pow(pp->p, 2 * c)) return TrivialCubeFamily{pp->p, c};
    }
    return TheoremViolation{inst.x, inst.k, s, root, *pp};
}

std::vector<std::pair<std::uint64_t, PrimePower>> x1_solutions(std::uint64_t k_limit) {
    if (k_limit < 1) throw domain_error("x1_solutions requires k_limit >= 1");
    std::vector<std::pair<std::uint64_t, PrimePower>> out;
    U128 delta = 0;  // tri(k), accumulated
    for (std::uint64_t k = 1; k <= k_limit; ++k) {
        delta += k;
        if (delta < 2) continue;  // tri(1) = 1 is not a prime power
        if (auto pp = prime_power_form(delta)) out.emplace_back(k, *pp);
    }
    return out;
}

// ---------------------------------------------------------------------------
// pairing divisor exponent

unsigned pairing_prime_power_exponent(const CubeSumInstance& inst, U128 p, unsigned r) {
    validate(inst);
    if (r < 1) throw hypothesis_violated_error("hypothesis requires r >= 1");
    if (!is_prime(p)) throw hypothesis_violated_error("hypothesis requires p prime");
    U128 d = pairing_divisor(inst);
    if (d == 1) throw hypothesis_violated_error("pairing divisor 1 lies outside 0 < t");
    unsigned t = valuation(d, p);
    if (checked_pow_opt(p, t) != std::optional<U128>(d))
        throw hypothesis_violated_error("pairing divisor is not a power of p");
    if (t == 0 || static_cast<std::uint64_t>(t) >= 2ull * r)
        throw hypothesis_violated_error("pairing exponent t outside 0 < t < 2r");
    return t;
}

LemmaReport lemma_pairing_exponent(const CubeSumInstance& inst, U128 p, unsigned r) {
    validate(inst);
    if (p < 2) throw domain_error("p must be at least 2");
    U128 d = pairing_divisor(inst);
    unsigned t = d == 1 ? 0 : valuation(d, p);
    bool power = d > 1 && checked_pow_opt(p, t) == std::optional<U128>(d);
    bool holds = power && t >= 1 && static_cast<std::uint64_t>(t) < 2ull * r;
    LemmaReport rep{LemmaId::PairingExponent,
                    ValueMap{{"x", inst.x}, {"k", inst.k}, {"p", p}, {"r", r}},
                    holds,
                    ValueMap{{"d", d}, {"t", t}}};
    return rep;
}

// ---------------------------------------------------------------------------
// lemma checkers

LemmaReport lemma_q_bound(U128 x, U128 l, U128 p, unsigned t, KParity parity) {
    if (x < 2) throw precondition_violated_error("q bound needs x >= 2");
    if (l < 1) throw precondition_violated_error("q bound needs l >= 1");
    if (p < 2 || t < 1) throw domain_error("q bound needs p >= 2 and t >= 1");
    U128 pt = checked_pow(p, t);
    U128 pairing = parity == KParity::Even ? 2 * x + 2 * l - 1 : x + l - 1;
    if (pairing != pt) throw precondition_violated_error("pairing identity p^t failed");
    unsigned q = valuation(triangular(x - 1), p);
    bool holds = parity == KParity::Even ? q < t : q <= t;
    return {LemmaId::QBound,
            ValueMap{{"x", x}, {"l", l}, {"p", p}, {"t", t},
                     {"parity", parity == KParity::Even ? 0 : 1}},
            holds,
            ValueMap{{"q", q}, {"tri_low", triangular(x - 1)}}};
}

LemmaReport lemma_congruence(U128 x, U128 p, unsigned t) {
    if (p.raw() % 2 == 0) throw domain_error("congruence lemma is for odd p");
    if (p < 3 || t < 1) throw domain_error("congruence lemma needs p >= 3 and t >= 1");
    if (x < 1) throw domain_error("congruence lemma needs x >= 1");
    U128 pt = checked_pow(p, t);
    if (pt < 2 * x + 1) throw precondition_violated_error("needs p^t >= 2x+1");
    U128 lhs = (pt - x) * (pt - (x - 1)) / 2;
    U128 rhs = triangular(x - 1);
    bool holds = lhs % pt == rhs % pt;
    return {LemmaId::Congruence,
            ValueMap{{"x", x}, {"p", p}, {"t", t}},
            holds,
            ValueMap{{"lhs", lhs}, {"rhs", rhs}, {"lhs_mod", lhs % pt}, {"rhs_mod", rhs % pt}}};
}

LemmaReport lemma_valuation_equality(U128 x, U128 p, unsigned t, KParity parity) {
    if (x < 2) throw precondition_violated_error("valuation equality needs x >= 2");
    if (p < 2 || t < 1) throw domain_error("valuation equality needs p >= 2 and t >= 1");
    U128 pt = checked_pow(p, t);
    if (parity == KParity::Even ? pt < 2 * x + 1 : pt < x)
        throw precondition_violated_error("pairing range admits no l >= 1");
    U128 rhs = triangular(x - 1);
    unsigned q = valuation(rhs, p);
    if (q >= t) throw precondition_violated_error("valuation equality is derived under q < t");
    U128 base = parity == KParity::Even ? pt : 2 * pt;
    U128 lhs = (base - x) * (base - (x - 1)) / 2;
    unsigned vl = valuation(lhs, p);
    return {LemmaId::ValuationEquality,
            ValueMap{{"x", x}, {"p", p}, {"t", t},
                     {"parity", parity == KParity::Even ? 0 : 1}},
            vl == q,
            ValueMap{{"q", q}, {"v_lhs", vl}, {"lhs", lhs}, {"rhs", rhs}}};
}

LemmaReport lemma_triple_formation(const CubeSumInstance& inst, U128 p, unsigned r) {
    validate(inst);
    if (inst.x < 2) throw precondition_violated_error("triple formation needs x >= 2");
    if (r < 1 || !is_prime(p)) throw hypothesis_violated_error("hypothesis requires prime p, r >= 1");
    U128 s = cube_sum(inst);
    auto pw = checked_pow_opt(p, 2 * r);
    if (!pw || *pw != s) throw hypothesis_violated_error("S(x,k) != p^(2r)");
    auto [high, low] = triangular_pair(inst);
    ReducedTriple red = reduce_by_common_valuation(high, checked_pow(p, r), low, p);
    bool holds = is_primitive_triple(red.a, red.b, red.c);
    ValueMap witness{{"q", red.q}, {"a", red.a}, {"pp_leg", red.b}, {"b", red.c}};
    if (holds) {
        PrimitiveTriple g = recover_params(red.a, red.b, red.c);
        witness.set("m", g.m);
        witness.set("n", g.n);
    }
    return {LemmaId::TripleFormation,
            ValueMap{{"x", inst.x}, {"k", inst.k}, {"p", p}, {"r", r}},
            holds, witness};
}

// ---------------------------------------------------------------------------
// proof replay

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw internal_inconsistency_error(what);
}

ProofTrace finish_contradiction(ProofTrace tr) {
    tr.outcome = TraceContradiction{tr.steps.size() - 1};
    return tr;
}

// k even, x >= 2, hypothesis verified, t = pairing exponent.  Every path
// here records a contradiction; no such instance exists, so end-to-end this
// is exercised only by the case analysis itself.
ProofTrace replay_even(ProofTrace tr, U128 x, U128 l, U128 p, unsigned r, unsigned t,
                       U128 high, U128 low) {
    U128 pt = checked_pow(p, t);

    LemmaReport qb = lemma_q_bound(x, l, p, t, KParity::Even);
    unsigned q = static_cast<unsigned>(qb.witness.get("q")->to_u64());
    require(qb.holds, "q < t must hold for even k under the hypothesis");
    tr.steps.push_back({"Eq7", ValueMap{{"q", q}, {"t", t}}, StepStatus::Holds});

    // rewritten main equation: the left factor pair is exactly tri(x+k-1)
    U128 lhs6 = (pt - x) * (pt - (x - 1)) / 2;
    require(lhs6 == high, "pairing substitution must reproduce tri(x+k-1)");
    tr.steps.push_back({"Eq6", ValueMap{{"lhs", lhs6}, {"tri_high", high}}, StepStatus::Holds});

    LemmaReport cg = lemma_congruence(x, p, t);  // p odd: the pairing value is odd
    require(cg.holds, "mod p^t congruence is an identity");
    tr.steps.push_back({"Eq8",
                        ValueMap{{"lhs_mod", *cg.witness.get("lhs_mod")},
                                 {"rhs_mod", *cg.witness.get("rhs_mod")}},
                        StepStatus::Holds});

    LemmaReport ve = lemma_valuation_equality(x, p, t, KParity::Even);
    require(ve.holds, "valuation equality is forced by the congruence and q < t");
    tr.steps.push_back({"Eq9", ValueMap{{"q", q}, {"v_lhs", *ve.witness.get("v_lhs")}},
                        StepStatus::Holds});

    ReducedTriple red = reduce_by_common_valuation(high, checked_pow(p, r), low, p);
    require(red.q == q, "common valuation must equal q");
    tr.steps.push_back({"Reduce",
                        ValueMap{{"q", q}, {"a", red.a}, {"pp_leg", red.b}, {"b", red.c}},
                        StepStatus::Holds});

    require(is_primitive_triple(red.a, red.b, red.c), "reduced triple must be primitive");
    PrimitiveTriple g = recover_params(red.a, red.b, red.c);
    tr.steps.push_back({"Triple", ValueMap{{"m", g.m}, {"n", g.n}, {"a", g.hyp}}, StepStatus::Holds});

    U128 a = red.a, b = red.c, pr_q = red.b;
    if (pr_q == g.leg_even) {
        // p^(r-q) = 2mn forces p = 2; coprimality forces n = 1, a - b = 2
        tr.steps.push_back({"S2.1", ValueMap{{"p", p}}, StepStatus::BranchTaken});
        require(p == 2, "even p^(r-q) forces p = 2");
        require(g.n == 1 && a - b == 2, "coprime powers of two force n = 1");
        tr.steps.push_back({"S2.1", ValueMap{{"n", g.n}, {"a_minus_b", a - b}}, StepStatus::Holds});
        U128 diff = high - low;  // = (a-b) p^q = 2^(q+1), and also = p^t l
        require(diff == pt * l, "tri difference must equal p^t l");
        require(t == q + 1 && l == 1, "2^(q+1) = 2^t l forces t = q+1, l = 1");
        tr.steps.push_back({"S2.1", ValueMap{{"diff", diff}, {"t", t}, {"q", q}, {"l", l}},
                            StepStatus::Holds});
        // 2x+1 = 2^t: odd equals even
        tr.steps.push_back({"S2.1", ValueMap{{"d", 2 * x + 1}, {"t", t}}, StepStatus::Contradiction});
        return finish_contradiction(std::move(tr));
    }
    require(pr_q == g.leg_odd, "p^(r-q) must be one of the two legs");
    // p^(r-q) = (m-n)(m+n): both factors are powers of p
    unsigned cc = g.m - g.n == 1 ? 0 : valuation(g.m - g.n, p);
    require(checked_pow_opt(p, cc) == std::optional<U128>(g.m - g.n),
            "m-n divides p^(r-q), hence is a power of p");
    tr.steps.push_back({"S2.2", ValueMap{{"m_minus_n", g.m - g.n}, {"c", cc}}, StepStatus::BranchTaken});
    if (cc > 0) {
        // (p^2c + p^2d)/2 = a would make p divide a, against gcd(a,p) = 1
        tr.steps.push_back({"S2.2", ValueMap{{"a_mod_p", a % p}}, StepStatus::Contradiction});
        return finish_contradiction(std::move(tr));
    }
    require(a - b == 1, "m - n = 1 gives a - b = (m-n)^2 = 1");
    tr.steps.push_back({"S2.2", ValueMap{{"a_minus_b", a - b}}, StepStatus::Holds});
    // p^t l = (a-b) p^q = p^q needs q >= t, against Eq7
    tr.steps.push_back({"S2.2", ValueMap{{"ptl", pt * l}, {"pq", checked_pow(p, q)}, {"q", q}, {"t", t}},
                        StepStatus::Contradiction});
    return finish_contradiction(std::move(tr));
}

// k odd, x >= 2, hypothesis verified, t = pairing exponent.
ProofTrace replay_odd(ProofTrace tr, U128 x, U128 k, U128 l, U128 p, unsigned r, unsigned t,
                      U128 high, U128 low) {
    U128 pt = checked_pow(p, t);

    LemmaReport qb = lemma_q_bound(x, l, p, t, KParity::Odd);
    unsigned q = static_cast<unsigned>(qb.witness.get("q")->to_u64());
    require(qb.holds, "q <= t must hold for odd k under the hypothesis");
    tr.steps.push_back({"S3", ValueMap{{"q", q}, {"t", t}}, StepStatus::Holds});

    U128 lhs11 = (2 * pt - x) * (2 * pt - (x - 1)) / 2;
    require(lhs11 == high, "pairing substitution must reproduce tri(x+k-1)");
    tr.steps.push_back({"Eq11", ValueMap{{"lhs", lhs11}, {"tri_high", high}}, StepStatus::Holds});

    if (q < t) {
        tr.steps.push_back({"S3.1", ValueMap{{"q", q}, {"t", t}}, StepStatus::BranchTaken});

        LemmaReport ve = lemma_valuation_equality(x, p, t, KParity::Odd);
        require(ve.holds, "valuation equality is forced by the congruence and q < t");
        tr.steps.push_back({"Eq12", ValueMap{{"q", q}, {"v_lhs", *ve.witness.get("v_lhs")}},
                            StepStatus::Holds});

        ReducedTriple red = reduce_by_common_valuation(high, checked_pow(p, r), low, p);
        require(red.q == q, "common valuation must equal q");
        tr.steps.push_back({"Reduce",
                            ValueMap{{"q", q}, {"a", red.a}, {"pp_leg", red.b}, {"b", red.c}},
                            StepStatus::Holds});

        require(is_primitive_triple(red.a, red.b, red.c), "reduced triple must be primitive");
        PrimitiveTriple g = recover_params(red.a, red.b, red.c);
        tr.steps.push_back({"Triple", ValueMap{{"m", g.m}, {"n", g.n}, {"a", g.hyp}},
                            StepStatus::Holds});

        U128 a = red.a, b = red.c, pr_q = red.b;
        if (pr_q == g.leg_even) {
            tr.steps.push_back({"S3.1.1", ValueMap{{"p", p}}, StepStatus::BranchTaken});
            require(p == 2, "even p^(r-q) forces p = 2");
            require(g.n == 1 && a - b == 2, "coprime powers of two force n = 1");
            tr.steps.push_back({"S3.1.1", ValueMap{{"n", g.n}, {"a_minus_b", a - b}},
                                StepStatus::Holds});
            U128 diff = high - low;  // = 2^(q+1), and also = p^t (2l-1)
            require(diff == pt * (2 * l - 1), "tri difference must equal p^t (2l-1)");
            require(l == 1 && k == 1 && t == q + 1,
                    "2^(q+1) = 2^t (2l-1) with q < t forces k = l = 1");
            tr.steps.push_back({"S3.1.1",
                                ValueMap{{"diff", diff}, {"l", l}, {"k", k}, {"t", t}, {"q", q}},
                                StepStatus::Holds});
            require(x == pt, "l = 1 reduces the pairing identity to x = p^t");
            require(2ull * r == 3ull * t && t % 2 == 0, "x^3 = p^(2r) forces 2r = 3t, t even");
            unsigned c = r - t;  // t = 2c, r = 3c
            require(t == 2 * c && r == 3 * c && x == checked_pow(p, 2 * c),
                    "the solution is the even-exponent power family");
            tr.steps.push_back({"S3.1.1", ValueMap{{"x", x}, {"t", t}, {"r", r}, {"c", c}},
                                StepStatus::Holds});
            tr.outcome = TraceTrivial{TrivialCubeFamily{p, c}};
            return tr;
        }
        require(pr_q == g.leg_odd, "p^(r-q) must be one of the two legs");
        unsigned cc = g.m - g.n == 1 ? 0 : valuation(g.m - g.n, p);
        require(checked_pow_opt(p, cc) == std::optional<U128>(g.m - g.n),
                "m-n divides p^(r-q), hence is a power of p");
        tr.steps.push_back({"S3.1.2", ValueMap{{"m_minus_n", g.m - g.n}, {"c", cc}},
                            StepStatus::BranchTaken});
        if (cc > 0) {
            tr.steps.push_back({"S3.1.2", ValueMap{{"a_mod_p", a % p}}, StepStatus::Contradiction});
            return finish_contradiction(std::move(tr));
        }
        require(a - b == 1, "m - n = 1 gives a - b = (m-n)^2 = 1");
        tr.steps.push_back({"S3.1.2", ValueMap{{"a_minus_b", a - b}}, StepStatus::Holds});
        // p^t (2l-1) = p^q needs q >= t, against the branch assumption
        tr.steps.push_back({"S3.1.2",
                            ValueMap{{"lhs", pt * (2 * l - 1)}, {"pq", checked_pow(p, q)},
                                     {"q", q}, {"t", t}},
                            StepStatus::Contradiction});
        return finish_contradiction(std::move(tr));
    }

    // q = t
    tr.steps.push_back({"S3.2", ValueMap{{"q", q}, {"t", t}}, StepStatus::BranchTaken});
    // p^t < 2p^t - (x-1) < 2p^t, so p^t cannot divide the second factor
    require((2 * pt - (x - 1)) % pt != 0, "strict range keeps 2p^t-(x-1) off the p^t grid");
    tr.steps.push_back({"S3.2", ValueMap{{"residue", (2 * pt - (x - 1)) % pt}}, StepStatus::Holds});
    // hence p^t | 2p^t - x, and 2 <= x <= p^t pins x = p^t, l = 1
    require(x == pt && l == 1, "q = t pins x = p^t and l = 1");
    tr.steps.push_back({"S3.2", ValueMap{{"x", x}, {"l", l}}, StepStatus::Holds});
    require(p != 2, "p = 2 would give q = t-1 < t");
    // (p^(r-t))^2 = ((p^t+1)/2)^2 - ((p^t-1)/2)^2 = p^t, so 2r = 3t
    U128 half_hi = (pt + 1) >> 1, half_lo = (pt - 1) >> 1;
    require(half_hi * half_hi - half_lo * half_lo == pt, "difference of halves equals p^t");
    require(2ull * r == 3ull * t && t % 2 == 0, "2(r-t) = t forces 2r = 3t, t even");
    unsigned c = r - t;
    require(t == 2 * c && r == 3 * c && x == checked_pow(p, 2 * c),
            "the solution is the even-exponent power family");
    tr.steps.push_back({"S3.2", ValueMap{{"x", x}, {"t", t}, {"r", r}, {"c", c}},
                        StepStatus::Holds});
    tr.outcome = TraceTrivial{TrivialCubeFamily{p, c}};
    return tr;
}

}  // namespace

ProofTrace replay_proof(std::uint64_t x, std::uint64_t k, U128 p, unsigned r) {
    CubeSumInstance inst{x, k};
    validate(inst);
    if (r < 1) throw hypothesis_violated_error("hypothesis requires r >= 1");
    if (!is_prime(p)) throw hypothesis_violated_error("hypothesis requires p prime");
    U128 s = cube_sum(inst);
    auto pw = checked_pow_opt(p, 2 * r);
    if (!pw || *pw != s) throw hypothesis_violated_error("S(x,k) != p^(2r)");
    if (x == 1) throw x_equals_one_error("x = 1 belongs to the triangular path");

    ProofTrace tr;
    tr.steps.push_back({"Eq2",
                        ValueMap{{"x", x}, {"k", k}, {"p", p}, {"r", r}, {"s", s},
                                 {"y", checked_pow(p, r)}},
                        StepStatus::Holds});
    auto [high, low] = triangular_pair(inst);
    require(high * high == s + low * low, "triangular identity");
    tr.steps.push_back({"Eq3", ValueMap{{"tri_high", high}, {"tri_low", low}, {"s", s}},
                        StepStatus::Holds});

    unsigned t = pairing_prime_power_exponent(inst, p, r);
    if (k % 2 == 0) {
        U128 l = U128(k) >> 1;
        tr.steps.push_back({"S2", ValueMap{{"k", k}, {"l", l}}, StepStatus::BranchTaken});
        tr.steps.push_back({"Eq5", ValueMap{{"d", pairing_divisor(inst)}, {"t", t}},
                            StepStatus::Holds});
        return replay_even(std::move(tr), U128(x), l, p, r, t, high, low);
    }
    U128 l = (U128(k) + 1) >> 1;
    tr.steps.push_back({"S3", ValueMap{{"k", k}, {"l", l}}, StepStatus::BranchTaken});
    tr.steps.push_back({"Eq10", ValueMap{{"d", pairing_divisor(inst)}, {"t", t}},
                        StepStatus::Holds});
    return replay_odd(std::move(tr), U128(x), U128(k), l, p, r, t, high, low);
}

ProofTrace x1_trace(std::uint64_t k, U128 p, unsigned r) {
    CubeSumInstance inst{1, k};
    validate(inst);
    if (r < 1) throw hypothesis_violated_error("hypothesis requires r >= 1");
    if (!is_prime(p)) throw hypothesis_violated_error("hypothesis requires p prime");
    U128 s = cube_sum(inst);
    auto pw = checked_pow_opt(p, 2 * r);
    if (!pw || *pw != s) throw hypothesis_violated_error("S(1,k) != p^(2r)");

    ProofTrace tr;
    tr.steps.push_back({"Eq2", ValueMap{{"x", 1}, {"k", k}, {"p", p}, {"r", r}, {"s", s}},
                        StepStatus::Holds});
    // S(1,k) = tri(k)^2, so the hypothesis collapses to tri(k) = p^r
    U128 dk = triangular(U128(k));
    require(dk == checked_pow(p, r), "square root of the hypothesis");
    tr.steps.push_back({"S1.1", ValueMap{{"delta_k", dk}, {"p", p}, {"r", r}}, StepStatus::Holds});
    // k(k+1)/2 = p^r: reducing mod p leaves only (k,p,r) = (2,3,1)
    require(k == 2 && p == 3 && r == 1, "tri(k) = p^r has the single solution (2,3,1)");
    tr.steps.push_back({"S1.1", ValueMap{{"k", k}, {"p", p}, {"r", r}}, StepStatus::Holds});
    tr.outcome = TraceTrivial{TrivialOneTwo{}};
    return tr;
}

ProofTrace trace_instance(std::uint64_t x, std::uint64_t k, U128 p, unsigned r) {
    return x == 1 ? x1_trace(k, p, r) : replay_proof(x, k, p, r);
}

}  // namespace cubesum
