#include <cmath>
#include <numeric>

#include <doctest.h>

#include "ellseq/errors.hpp"
#include "ellseq/primitive.hpp"
#include "ellseq/sequence.hpp"

using namespace ellseq;

namespace {

const FrobeniusParams& qa21() {
    static FrobeniusParams params = FrobeniusParams::create(2, 1);
    return params;
}

const ValuationRecord* find_prime(const std::vector<ValuationRecord>& recs, long p) {
    for (const auto& r : recs) {
        if (r.p == p) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("prime classification") {
    CHECK(classify_prime(qa21(), 7).kind == PrimeKind::ramified);  // 7 | delta
    CHECK(classify_prime(qa21(), 3).kind == PrimeKind::inert);
    CHECK(classify_prime(qa21(), 11).kind == PrimeKind::split);
}

TEST_CASE("rank of apparition") {
    CHECK(rank_of_apparition(qa21(), 2, 40) == 1);
    CHECK(rank_of_apparition(qa21(), 7, 40) == 3);   // N = 2, 8, 14
    CHECK(rank_of_apparition(qa21(), 11, 40) == 5);  // N_5 = 22
    CHECK_FALSE(rank_of_apparition(qa21(), 13, 4).has_value());
}

TEST_CASE("primitive prime scans") {
    PrimitiveScan s3 = primitive_primes(qa21(), 3);
    REQUIRE(s3.primitive.size() == 1);
    CHECK(s3.primitive[0].p == 7);
    CHECK(s3.primitive[0].kind == PrimeKind::ramified);
    REQUIRE(s3.nonprimitive.size() == 1);
    CHECK(s3.nonprimitive[0].p == 2);
    CHECK(s3.nonprimitive[0].rank == 1);

    PrimitiveScan s4 = primitive_primes(qa21(), 4);
    CHECK(s4.primitive.empty());  // N_4 = 2^4, rank(2) = 1

    PrimitiveScan s5 = primitive_primes(qa21(), 5);
    REQUIRE(s5.primitive.size() == 1);
    CHECK(s5.primitive[0].p == 11);
    CHECK(s5.primitive[0].kind == PrimeKind::split);
    CHECK(s5.primitive[0].p % 5 == 1);
    CHECK(s5.primitive[0].k_primitive);
}

TEST_CASE("rational rank and field-level rank genuinely differ") {
    // (q, a) = (2, 1): 3 is inert, first divides N_8 = 288, yet its
    // gamma-sequence rank is 4 (w_4 = -63); 3 = -1 mod 4 but 3 != +-1 mod 8.
    PrimitiveScan s8 = primitive_primes(qa21(), 8);
    const ValuationRecord* three = find_prime(s8.primitive, 3);
    REQUIRE(three != nullptr);
    CHECK(three->rank == 8);
    CHECK(three->kind == PrimeKind::inert);
    CHECK(three->k_primitive);
    REQUIRE(three->gamma_rank.has_value());
    CHECK(*three->gamma_rank == 4);
    CHECK(three->nu_Nn == 2);

    CongruenceVerdict v = check_congruence(qa21(), *three);
    CHECK(v.norm_congruence);        // 3^2 = 9 = 1 mod 8
    CHECK(v.signed_modulus == 4);    // 3 = -1 mod 4, the gamma-rank modulus
    CHECK_FALSE(v.note.empty());

    // the split prime 11 divides Psi_10 although its rational rank is 5:
    // one of the two field primes above it has multiplicative order 10
    PrimitiveScan s10 = primitive_primes(qa21(), 10);
    const ValuationRecord* eleven = find_prime(s10.nonprimitive, 11);
    REQUIRE(eleven != nullptr);
    CHECK(eleven->rank == 5);
    CHECK(eleven->nu_Psi_n == 1);
    CHECK(eleven->k_primitive);
    CHECK(has_primitive_field_prime(qa21(), 11, PrimeKind::split, 10));
    CHECK(has_primitive_field_prime(qa21(), 11, PrimeKind::split, 5));

    // (q, a) = (7, 2): 31 has rational rank 6 yet divides N_10, so the
    // apparition set is a union of two lattices, not multiples of the rank
    auto params72 = FrobeniusParams::create(7, 2);
    CHECK(rank_of_apparition(params72, 31, 40) == 6);
    CHECK(mpz_divisible_ui_p(group_order(params72, 10).get_mpz_t(), 31));
    CHECK(has_primitive_field_prime(params72, 31, PrimeKind::split, 10));
}

TEST_CASE("congruence checks on primitive primes") {
    // N_7 = 142 = 2 * 71, 71 = 1 mod 7
    PrimitiveScan s7 = primitive_primes(qa21(), 7);
    const ValuationRecord* p71 = find_prime(s7.primitive, 71);
    REQUIRE(p71 != nullptr);
    CHECK(p71->kind == PrimeKind::split);
    CongruenceVerdict v = check_congruence(qa21(), *p71);
    CHECK(v.norm_congruence);
    CHECK(v.norm_at_least_n_plus_1);
    CHECK(v.signed_modulus == 7);

    PrimitiveScan s3 = primitive_primes(qa21(), 3);
    CongruenceVerdict ram = check_congruence(qa21(), s3.primitive[0]);
    CHECK(ram.status == CongruenceStatus::skipped_ramified);

    ValuationRecord fake;
    fake.primitive = false;
    CHECK_THROWS_AS(check_congruence(qa21(), fake), PreconditionViolation);
}

TEST_CASE("non-primitive valuation bound") {
    NonprimitiveCheck c8 = nonprimitive_valuation_check(qa21(), 8);
    CHECK(c8.all_ok);
    NonprimitiveCheck c12 = nonprimitive_valuation_check(qa21(), 12);
    CHECK(c12.all_ok);
    // the field-primitive 11 must not be tested against the bound at n = 10
    NonprimitiveCheck c10 = nonprimitive_valuation_check(qa21(), 10);
    CHECK(c10.all_ok);
    for (const auto& e : c10.checked) CHECK(e.p != 11);
    CHECK_THROWS_AS(nonprimitive_valuation_check(qa21(), 6), PreconditionViolation);
}

TEST_CASE("gamma valuation") {
    CHECK(gamma_valuation(qa21(), 3, 4) == 1);  // w_4 = -63
    CHECK(gamma_valuation(qa21(), 3, 2) == 0);  // w_2 = -7
    unsigned v8 = gamma_valuation(qa21(), 3, 8);
    CHECK(v8 >= 1);
    CHECK(v8 >= gamma_valuation(qa21(), 3, 4));

    CHECK_THROWS_AS(gamma_valuation(qa21(), 11, 4), PreconditionViolation);  // split
    CHECK_THROWS_AS(gamma_valuation(qa21(), 7, 4), PreconditionViolation);   // ramified
    CHECK_THROWS_AS(gamma_valuation(qa21(), 2, 4), PreconditionViolation);   // p | 2q
    auto degenerate = FrobeniusParams::create(2, 2);
    CHECK_THROWS_AS(gamma_valuation(degenerate, 3, 4), PreconditionViolation);
}

TEST_CASE("gamma rank scan agrees with the field-order oracle") {
    CHECK(gamma_rank_scan(qa21(), 3, 40) == 4);
    CHECK(gamma_order_oracle(qa21(), 3) == 4);
    CHECK(gamma_rank_scan(qa21(), 5, 40) == 6);  // w_6 = -175 = -5^2 * 7
    CHECK(gamma_order_oracle(qa21(), 5) == 6);

    auto params31 = FrobeniusParams::create(3, 1);
    for (long p : {5L, 7L, 13L, 19L, 23L}) {
        if (classify_prime(params31, p).kind != PrimeKind::inert) continue;
        uint32_t ord = gamma_order_oracle(params31, p);
        auto scan = gamma_rank_scan(params31, p, 2000);
        REQUIRE(scan.has_value());
        CHECK(*scan == ord);
    }
}

TEST_CASE("residue classes, odd modulus") {
    CHECK(crt_class(15, 3).residue == 4);
    CHECK(crt_class(15, 15).residue == 1);
    CHECK(crt_class(15, 1).residue == 14);
    CHECK_THROWS_AS(crt_class(9, 3), NotUnitary);
    CHECK_THROWS_AS(crt_class(15, 4), NotUnitary);
}

TEST_CASE("residue classes, even modulus") {
    // n = 30, modulus 15: d = 5 covers p = 11 (which is 3 mod 4)
    CrtClass c = crt_class(30, 5, ParityBranch::p3mod4);
    CHECK(c.modulus == 15);
    CHECK(c.residue == 11);
    CHECK(std::gcd((11 - 1) / 2, 15) == 5);
    CHECK(std::gcd(11 + 1, 15) == 3);

    // branch validity: p3mod4 needs odd d
    CHECK_THROWS_AS(crt_class(24, 4, ParityBranch::p3mod4), PreconditionViolation);
    // auto branch picks by parity of d
    CHECK(crt_class(24, 4).branch == ParityBranch::p1mod4);
    CHECK(crt_class(24, 3).branch == ParityBranch::p3mod4);
    // odd n rejects parity branches
    CHECK_THROWS_AS(crt_class(15, 3, ParityBranch::p1mod4), PreconditionViolation);
}

TEST_CASE("small divisor census") {
    DivisorCensus c16 = small_divisor_census(16);
    CHECK(c16.count == 4);  // 1, 2, 4, 8 below 5 log 16 = 13.86; 16 above
    CHECK(c16.cutoff == doctest::Approx(5 * std::log(16.0)));

    // prime index: cutoff 2 log p lies between 1 and p
    DivisorCensus c17 = small_divisor_census(17);
    CHECK(c17.count == 1);

    // 2^20 has 21 divisors; cutoff = 21 log(2^20) = 291.1 admits 1..256
    DivisorCensus c20 = small_divisor_census(mpz_class(1) << 20);
    CHECK(c20.count == 9);

    CHECK_THROWS_AS(small_divisor_census(11), PreconditionViolation);
}

TEST_CASE("modular square roots") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 10007L, 1000003L}) {
        mpz_class mp(p);
        int found = 0;
        for (long a = 0; a < std::min(p, 60L); ++a) {
            auto r = sqrt_mod(a, mp);
            if (r) {
                ++found;
                CHECK((*r * *r) % mp == mpz_class(a) % mp);
            }
        }
        CHECK(found > 0);
    }
}
