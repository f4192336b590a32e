#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cubesum/theorem.hpp"

using namespace cubesum;

namespace {

// from-scratch pipeline used as an oracle against classify(): naive
// summation, then root extraction, then full factorization of the root
enum class Verdict { NotSquare, SquareNotPp, Trivial };

Verdict classify_by_oracle(std::uint64_t x, std::uint64_t k) {
    U128 s = cube_sum_naive({x, k});
    auto [root, exact] = isqrt(s);
    if (!exact) return Verdict::NotSquare;
    if (root == 1 || factorize(root).factors.size() != 1) return Verdict::SquareNotPp;
    return Verdict::Trivial;
}

Verdict verdict_of(const Certificate& cert) {
    if (std::holds_alternative<NotASquare>(cert)) return Verdict::NotSquare;
    if (std::holds_alternative<SquareNotPrimePower>(cert)) return Verdict::SquareNotPp;
    REQUIRE(is_trivial(cert));
    return Verdict::Trivial;
}

std::vector<std::string_view> tags_of(const ProofTrace& tr) {
    std::vector<std::string_view> tags;
    for (const ProofStep& s : tr.steps) tags.push_back(s.tag);
    return tags;
}

bool has_tag(const ProofTrace& tr, std::string_view tag) {
    for (const ProofStep& s : tr.steps)
        if (tag == s.tag) return true;
    return false;
}

const TrivialCubeFamily& family_of(const ProofTrace& tr) {
    const auto* triv = std::get_if<TraceTrivial>(&tr.outcome);
    REQUIRE(triv != nullptr);
    const auto* fam = std::get_if<TrivialCubeFamily>(&triv->certificate);
    REQUIRE(fam != nullptr);
    return *fam;
}

}  // namespace

TEST_CASE("classify worked examples") {
    CHECK(classify({1, 2}) == Certificate{TrivialOneTwo{}});
    CHECK(classify({4, 1}) == Certificate{TrivialCubeFamily{2, 1}});
    CHECK(classify({9, 1}) == Certificate{TrivialCubeFamily{3, 1}});
    CHECK(classify({16, 1}) == Certificate{TrivialCubeFamily{2, 2}});
    CHECK(classify({64, 1}) == Certificate{TrivialCubeFamily{2, 3}});
    CHECK(classify({2, 3}) == Certificate{NotASquare{9}});

    Certificate c = classify({23, 3});
    auto* np = std::get_if<SquareNotPrimePower>(&c);
    REQUIRE(np != nullptr);
    CHECK(np->y == 204);
    CHECK(np->y_factors.str() == "2^2*3^1*17^1");

    Certificate c5 = classify({25, 5});
    auto* np5 = std::get_if<SquareNotPrimePower>(&c5);
    REQUIRE(np5 != nullptr);
    CHECK(np5->y == 315);

    // y = 1 counts as square-but-not-prime-power
    Certificate one = classify({1, 1});
    auto* np1 = std::get_if<SquareNotPrimePower>(&one);
    REQUIRE(np1 != nullptr);
    CHECK(np1->y == 1);
    CHECK(np1->y_factors.factors.empty());

    // x square but not a prime power: y picks up both primes
    Certificate c36 = classify({36, 1});
    auto* np36 = std::get_if<SquareNotPrimePower>(&c36);
    REQUIRE(np36 != nullptr);
    CHECK(np36->y == 216);

    CHECK_THROWS_AS(classify({0, 1}), domain_error);
}

TEST_CASE("classify never reports a violation on a dense sweep") {
    for (std::uint64_t x = 1; x <= 120; ++x)
        for (std::uint64_t k = 1; k <= 120; ++k)
            CHECK(!std::holds_alternative<TheoremViolation>(classify({x, k})));
}

TEST_CASE("classify agrees with the from-scratch pipeline") {
    for (std::uint64_t x = 1; x <= 60; ++x)
        for (std::uint64_t k = 1; k <= 60; ++k)
            CHECK(verdict_of(classify({x, k})) == classify_by_oracle(x, k));
}

TEST_CASE("x1_solutions") {
    CHECK(x1_solutions(1).empty());
    auto sols = x1_solutions(10);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].first == 2);
    CHECK(sols[0].second == PrimePower{3, 1});
    CHECK(x1_solutions(2000) == sols);
    CHECK_THROWS_AS(x1_solutions(0), domain_error);
}

TEST_CASE("pairing_prime_power_exponent") {
    CHECK(pairing_prime_power_exponent({1, 2}, 3, 1) == 1);   // 2x+k-1 = 3
    CHECK(pairing_prime_power_exponent({4, 1}, 2, 3) == 2);   // (2x+k-1)/2 = 4
    CHECK(pairing_prime_power_exponent({9, 1}, 3, 3) == 2);   // (2x+k-1)/2 = 9
    // divisor 7 is not a power of 5
    CHECK_THROWS_AS(pairing_prime_power_exponent({2, 4}, 5, 2), hypothesis_violated_error);
    // divisor 1 sits outside 0 < t
    CHECK_THROWS_AS(pairing_prime_power_exponent({1, 1}, 3, 1), hypothesis_violated_error);
    // t = 2 requires 2r > 2
    CHECK_THROWS_AS(pairing_prime_power_exponent({4, 1}, 2, 1), hypothesis_violated_error);
    CHECK_THROWS_AS(pairing_prime_power_exponent({4, 1}, 4, 3), hypothesis_violated_error);
    CHECK_THROWS_AS(pairing_prime_power_exponent({4, 1}, 2, 0), hypothesis_violated_error);
}

TEST_CASE("lemma_pairing_exponent reports instead of throwing") {
    LemmaReport ok = lemma_pairing_exponent({4, 1}, 2, 3);
    CHECK(ok.holds);
    CHECK(ok.witness.get("t") == std::optional<U128>(2));
    CHECK(ok.witness.get("d") == std::optional<U128>(4));
    CHECK(ok.lemma_id == LemmaId::PairingExponent);

    CHECK(!lemma_pairing_exponent({2, 4}, 5, 2).holds);
    CHECK(!lemma_pairing_exponent({1, 1}, 3, 1).holds);
    CHECK(!lemma_pairing_exponent({4, 1}, 2, 1).holds);
}

TEST_CASE("lemma_q_bound worked examples") {
    // even: 2x+2l-1 = 9 = 3^2, tri(2) = 3, q = 1 < 2
    LemmaReport a = lemma_q_bound(3, 2, 3, 2, KParity::Even);
    CHECK(a.holds);
    CHECK(a.witness.get("q") == std::optional<U128>(1));

    // even: 2x+2l-1 = 7, tri(1) = 1, q = 0 < 1
    LemmaReport b = lemma_q_bound(2, 2, 7, 1, KParity::Even);
    CHECK(b.holds);
    CHECK(b.witness.get("q") == std::optional<U128>(0));
    // no (x >= 2, l >= 1) satisfies 2x+2l-1 = 3, so this input is rejected
    CHECK_THROWS_AS(lemma_q_bound(2, 1, 3, 1, KParity::Even), precondition_violated_error);

    // odd: x+l-1 = 9 = 3^2, tri(8) = 36, q = 2 = t (equality allowed)
    LemmaReport c = lemma_q_bound(9, 1, 3, 2, KParity::Odd);
    CHECK(c.holds);
    CHECK(c.witness.get("q") == std::optional<U128>(2));

    CHECK_THROWS_AS(lemma_q_bound(5, 1, 3, 2, KParity::Even), precondition_violated_error);
    CHECK_THROWS_AS(lemma_q_bound(1, 2, 3, 1, KParity::Even), precondition_violated_error);
    CHECK_THROWS_AS(lemma_q_bound(3, 0, 3, 2, KParity::Even), precondition_violated_error);
}

TEST_CASE("lemma_congruence worked examples") {
    // (9-3)(9-2)/2 = 21 and tri(2) = 3 agree mod 9
    LemmaReport a = lemma_congruence(3, 3, 2);
    CHECK(a.holds);
    CHECK(a.witness.get("lhs") == std::optional<U128>(21));
    CHECK(a.witness.get("rhs") == std::optional<U128>(3));

    // (5-2)(5-1)/2 = 6 and tri(1) = 1 agree mod 5
    LemmaReport b = lemma_congruence(2, 5, 1);
    CHECK(b.holds);
    CHECK(b.witness.get("lhs") == std::optional<U128>(6));

    // (25-12)(25-11)/2 = 91 and tri(11) = 66 differ by exactly 25
    LemmaReport c = lemma_congruence(12, 5, 2);
    CHECK(c.holds);

    CHECK_THROWS_AS(lemma_congruence(3, 2, 2), domain_error);  // p = 2 never reaches this lemma
    CHECK_THROWS_AS(lemma_congruence(5, 3, 1), precondition_violated_error);  // 3 < 11
}

TEST_CASE("lemma_valuation_equality worked examples") {
    LemmaReport a = lemma_valuation_equality(3, 3, 2, KParity::Even);
    CHECK(a.holds);
    CHECK(a.witness.get("q") == std::optional<U128>(1));
    CHECK(a.witness.get("v_lhs") == std::optional<U128>(1));

    LemmaReport b = lemma_valuation_equality(2, 5, 1, KParity::Even);
    CHECK(b.holds);
    CHECK(b.witness.get("q") == std::optional<U128>(0));

    // odd case: (18-5)(18-4)/2 = 91 vs tri(4) = 10, both with v_3 = 0
    LemmaReport c = lemma_valuation_equality(5, 3, 2, KParity::Odd);
    CHECK(c.holds);
    CHECK(c.witness.get("lhs") == std::optional<U128>(91));
    CHECK(c.witness.get("q") == std::optional<U128>(0));

    // q = t is outside the regime the equality is derived in
    CHECK_THROWS_AS(lemma_valuation_equality(9, 3, 2, KParity::Odd), precondition_violated_error);
    CHECK_THROWS_AS(lemma_valuation_equality(1, 3, 2, KParity::Odd), precondition_violated_error);
    // even pairing needs p^t >= 2x+1
    CHECK_THROWS_AS(lemma_valuation_equality(3, 3, 1, KParity::Even), precondition_violated_error);
}

TEST_CASE("lemma_triple_formation") {
    LemmaReport a = lemma_triple_formation({4, 1}, 2, 3);
    CHECK(a.holds);
    CHECK(a.witness.get("q") == std::optional<U128>(1));
    CHECK(a.witness.get("a") == std::optional<U128>(5));
    CHECK(a.witness.get("m") == std::optional<U128>(2));
    CHECK(a.witness.get("n") == std::optional<U128>(1));

    CHECK(lemma_triple_formation({9, 1}, 3, 3).holds);
    CHECK_THROWS_AS(lemma_triple_formation({4, 1}, 2, 2), hypothesis_violated_error);
    CHECK_THROWS_AS(lemma_triple_formation({1, 2}, 3, 1), precondition_violated_error);
}

TEST_CASE("replay_proof walks the power-of-two family through S3.1.1") {
    ProofTrace tr = replay_proof(4, 1, 2, 3);
    const TrivialCubeFamily& fam = family_of(tr);
    CHECK(fam.p == 2);
    CHECK(fam.c == 1);
    CHECK(has_tag(tr, "Eq10"));
    CHECK(has_tag(tr, "S3.1"));
    CHECK(has_tag(tr, "S3.1.1"));
    CHECK(has_tag(tr, "Reduce"));
    CHECK(has_tag(tr, "Triple"));
    CHECK(!has_tag(tr, "S3.2"));
    // every recorded step holds or takes a branch; no contradictions
    for (const ProofStep& s : tr.steps) CHECK(s.status != StepStatus::Contradiction);

    ProofTrace big = replay_proof(16, 1, 2, 6);
    CHECK(family_of(big).p == 2);
    CHECK(family_of(big).c == 2);
    CHECK(has_tag(big, "S3.1.1"));
}

TEST_CASE("replay_proof walks odd-prime families through S3.2") {
    ProofTrace tr = replay_proof(9, 1, 3, 3);
    CHECK(family_of(tr).p == 3);
    CHECK(family_of(tr).c == 1);
    CHECK(has_tag(tr, "Eq10"));
    CHECK(has_tag(tr, "S3.2"));
    CHECK(!has_tag(tr, "S3.1"));

    ProofTrace t25 = replay_proof(25, 1, 5, 3);
    CHECK(family_of(t25).p == 5);
    CHECK(family_of(t25).c == 1);
    CHECK(has_tag(t25, "S3.2"));

    ProofTrace t729 = replay_proof(729, 1, 3, 9);
    CHECK(family_of(t729).p == 3);
    CHECK(family_of(t729).c == 3);
}

TEST_CASE("replay_proof step tags appear in derivation order") {
    auto tags = tags_of(replay_proof(4, 1, 2, 3));
    std::vector<std::string_view> expected{"Eq2", "Eq3",    "S3",     "Eq10",   "S3",
                                           "Eq11", "S3.1",  "Eq12",   "Reduce", "Triple",
                                           "S3.1.1", "S3.1.1", "S3.1.1", "S3.1.1"};
    CHECK(tags == expected);
}

TEST_CASE("replay_proof rejects bad hypotheses and x = 1") {
    CHECK_THROWS_AS(replay_proof(2, 3, 3, 1), hypothesis_violated_error);   // S = 99 != 9
    CHECK_THROWS_AS(replay_proof(4, 1, 2, 2), hypothesis_violated_error);   // 64 != 2^4
    CHECK_THROWS_AS(replay_proof(4, 1, 6, 3), hypothesis_violated_error);   // p not prime
    CHECK_THROWS_AS(replay_proof(4, 1, 2, 0), hypothesis_violated_error);
    CHECK_THROWS_AS(replay_proof(1, 2, 3, 1), x_equals_one_error);
    CHECK_THROWS_AS(replay_proof(0, 1, 2, 1), domain_error);
}

TEST_CASE("x1_trace solves the triangular line") {
    ProofTrace tr = x1_trace(2, 3, 1);
    CHECK(std::holds_alternative<TraceTrivial>(tr.outcome));
    CHECK(std::get<TraceTrivial>(tr.outcome).certificate == Certificate{TrivialOneTwo{}});
    CHECK(has_tag(tr, "S1.1"));
    CHECK_THROWS_AS(x1_trace(1, 2, 1), hypothesis_violated_error);  // S = 1 is no p^(2r)
    CHECK_THROWS_AS(x1_trace(3, 3, 2), hypothesis_violated_error);  // S = 36 = (2*3)^2
}

TEST_CASE("trace_instance dispatches on x") {
    CHECK(std::holds_alternative<TraceTrivial>(trace_instance(1, 2, 3, 1).outcome));
    CHECK(family_of(trace_instance(9, 1, 3, 3)).p == 3);
}

TEST_CASE("synthetic traces satisfy the outcome invariant") {
    // the trace format must be able to carry a contradiction even though no
    // real input produces one end to end
    ProofTrace synthetic;
    synthetic.steps.push_back({"Eq2", ValueMap{{"x", 7}}, StepStatus::Holds});
    synthetic.steps.push_back({"S2", ValueMap{{"k", 4}}, StepStatus::BranchTaken});
    synthetic.steps.push_back({"S2.1", ValueMap{{"d", 15}}, StepStatus::Contradiction});
    synthetic.outcome = TraceContradiction{2};

    const auto* contra = std::get_if<TraceContradiction>(&synthetic.outcome);
    REQUIRE(contra != nullptr);
    CHECK(synthetic.steps.at(contra->step_index).status == StepStatus::Contradiction);

    // trivial outcomes carry no contradiction step
    ProofTrace real = replay_proof(9, 1, 3, 3);
    REQUIRE(std::holds_alternative<TraceTrivial>(real.outcome));
    for (const ProofStep& s : real.steps) CHECK(s.status != StepStatus::Contradiction);
}

TEST_CASE("lemma holds across a dense admissible grid") {
    // every odd prime power p^t <= 2000, every admissible x
    for (U128 p : {U128(3), U128(5), U128(7), U128(11), U128(13)}) {
        for (unsigned t = 1; checked_pow_opt(p, t) && checked_pow(p, t) <= 2000; ++t) {
            U128 pt = checked_pow(p, t);
            for (U128 x = 2; 2 * x + 1 <= pt; x += 1) {
                CHECK(lemma_congruence(x, p, t).holds);
                U128 l = (pt + 1 - 2 * x) / 2;
                if (l >= 1) CHECK(lemma_q_bound(x, l, p, t, KParity::Even).holds);
                unsigned q = valuation(triangular(x - 1), p);
                if (q < t) CHECK(lemma_valuation_equality(x, p, t, KParity::Even).holds);
            }
            for (U128 x = 2; x <= pt; x += 1) {
                U128 l = pt - x + 1;
                CHECK(lemma_q_bound(x, l, p, t, KParity::Odd).holds);
                unsigned q = valuation(triangular(x - 1), p);
                if (q < t) CHECK(lemma_valuation_equality(x, p, t, KParity::Odd).holds);
            }
        }
    }
}

TEST_CASE("certificate names") {
    CHECK(certificate_name(Certificate{TrivialOneTwo{}}) == "TrivialOneTwo");
    CHECK(certificate_name(Certificate{NotASquare{9}}) == "NotASquare");
    CHECK(certificate_name(Certificate{TrivialCubeFamily{2, 1}}) == "TrivialCubeFamily");
    CHECK(is_trivial(Certificate{TrivialOneTwo{}}));
    CHECK(is_trivial(Certificate{TrivialCubeFamily{2, 1}}));
    CHECK(!is_trivial(Certificate{NotASquare{9}}));
    // a violation hit must flip all_trivial, which is what drives exit code 5
    CHECK(!is_trivial(Certificate{TheoremViolation{7, 4, 100, 10, PrimePower{2, 5}}}));
    CHECK(certificate_name(Certificate{TheoremViolation{7, 4, 100, 10, PrimePower{2, 5}}}) ==
          "TheoremViolation");
    CHECK(lemma_name(LemmaId::QBound) == "QBound");
    CHECK(lemma_name(LemmaId::TripleFormation) == "TripleFormation");
    CHECK(step_status_name(StepStatus::Holds) == "holds");
    CHECK(step_status_name(StepStatus::BranchTaken) == "branch_taken");
}
