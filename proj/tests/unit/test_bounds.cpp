#include <cmath>
#include <random>

#include <doctest.h>
#include <mpfr.h>

#include "ellseq/bounds.hpp"
#include "ellseq/errors.hpp"
#include "ellseq/interval.hpp"
#include "ellseq/sequence.hpp"

using namespace ellseq;

namespace {

// independent high-precision route for the valuation-bound evaluators
double mpfr_rational_bound(double Np, unsigned d, double h, uint64_t n) {
    mpfr_t x, l, ll, e;
    mpfr_inits2(256, x, l, ll, e, nullptr);
    mpfr_set_d(x, Np, MPFR_RNDN);
    mpfr_log(l, x, MPFR_RNDN);
    mpfr_log(ll, l, MPFR_RNDN);
    mpfr_div(e, l, ll, MPFR_RNDN);
    mpfr_mul_d(e, e, -0.002 / d, MPFR_RNDN);
    mpfr_exp(e, e, MPFR_RNDN);
    mpfr_mul(e, e, x, MPFR_RNDN);
    double logs = std::max(std::log(static_cast<double>(n)), 1.0);
    double out = mpfr_get_d(e, MPFR_RNDN) * h * logs;
    mpfr_clears(x, l, ll, e, nullptr);
    return out;
}

}  // namespace

TEST_CASE("iterated-log towers compare like reals when representable") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        double a = val(rng), b = val(rng);
        IteratedLog ta = exp_tower(0, a), tb = exp_tower(0, b);
        int c = compare(ta, tb);
        CHECK(c == (a < b ? -1 : (a > b ? 1 : 0)));
        // exp_tower(1, a) represents exp(a)
        CHECK(compare(exp_tower(1, a), exp_tower(0, std::exp(a))) == 0);
    }
}

TEST_CASE("iterated-log comparison is transitive") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<unsigned> depth(0, 3);
    std::uniform_real_distribution<double> val(0.1, 1e11);
    auto leq = [](const IteratedLog& x, const IteratedLog& y) { return compare(x, y) <= 0; };
    for (int i = 0; i < 1000; ++i) {
        IteratedLog a = exp_tower(depth(rng), val(rng));
        IteratedLog b = exp_tower(depth(rng), val(rng));
        IteratedLog c = exp_tower(depth(rng), val(rng));
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
        if (leq(c, b) && leq(b, a)) CHECK(leq(c, a));
    }
}

TEST_CASE("tower ordering across depths") {
    CHECK(compare(exp_tower(2, 1e10), exp_tower(1, 160000.0)) > 0);
    CHECK(compare(exp_tower(1, 160000.0), exp_tower(0, 1e308)) > 0);
    CHECK(compare(exp_tower(2, 1e8), exp_tower(2, 1e10)) < 0);
    CHECK(compare(exp_tower(2, -100.0), exp_tower(0, 3.0)) < 0);  // exp(exp(-100)) = 1
}

TEST_CASE("rational valuation bound evaluator") {
    double v = valuation_bound_rational(1e6, 2, 1.0, 2);
    CHECK(v == doctest::Approx(mpfr_rational_bound(1e6, 2, 1.0, 2)).epsilon(1e-12));
    // log* 1 = log* 2 = 1, so n = 1 and n = 2 agree
    CHECK(valuation_bound_rational(1e6, 2, 1.0, 1) == v);
    // linear in h
    CHECK(valuation_bound_rational(1e6, 2, 2.0, 2) == doctest::Approx(2 * v).epsilon(1e-14));
    CHECK_THROWS_AS(valuation_bound_rational(2.0, 2, 1.0, 2), DomainError);
}

TEST_CASE("valuation bound evaluators match a second high-precision route") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> logNp(1.1, 69.0);  // Np in (e, 1e30)
    std::uniform_real_distribution<double> hval(0.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        double Np = std::exp(logNp(rng));
        unsigned d = 1 + rng() % 8;
        double h = hval(rng);
        uint64_t n = 1 + rng() % 1'000'000;
        double mine = valuation_bound_rational(Np, d, h, n);
        double oracle = mpfr_rational_bound(Np, d, h, n);
        CHECK(mine == doctest::Approx(oracle).epsilon(1e-12));
        // monotone in h
        CHECK(valuation_bound_rational(Np, d, h + 1.0, n) >= mine);
        if (mpz_class p = mpz_class(static_cast<long>(Np)); p > 3) {
            CHECK(valuation_bound_quadratic(p, h + 0.5, n) >=
                  valuation_bound_quadratic(p, h, n));
        }
    }
}

TEST_CASE("quadratic valuation bound evaluator") {
    double h = 0.5 * std::log(2.0);
    double v = valuation_bound_quadratic(3, h, 4);
    // independently: 3 exp(-0.001 log3 / loglog3) h log 4
    double expected =
        3.0 * std::exp(-0.001 * std::log(3.0) / std::log(std::log(3.0))) * h *
        std::log(4.0);
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
    CHECK(valuation_bound_quadratic(3, 0.0, 4) == 0.0);
    CHECK_THROWS_AS(valuation_bound_quadratic(2, h, 4), DomainError);
}

TEST_CASE("prime-divisor log bound") {
    double lhs = prime_divisor_log_bound(1619);
    double expected = std::log(1619.0) + 0.0001 * std::log(1619.0) / std::log(std::log(1619.0));
    CHECK(lhs == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(prime_divisor_log_bound(15), DomainError);

    double prev = 0;
    for (uint64_t n : {16ull, 100ull, 1619ull, 100000ull, 1000000ull, 1000000000ull}) {
        double b = prime_divisor_log_bound(n);
        CHECK(b > std::log(static_cast<double>(n)));
        CHECK(b >= prev);
        prev = b;
    }
}

TEST_CASE("thresholds") {
    Thresholds t21 = thresholds(FrobeniusParams::create(2, 1));
    CHECK(t21.fundamental_disc == -7);
    CHECK(compare(t21.n0, exp_tower(2, 1e10)) == 0);
    CHECK(compare(t21.p0_quad, exp_tower(2, 1e8)) == 0);
    CHECK(compare(t21.p0_rat, exp_tower(1, 160000.0)) == 0);

    // delta = -44 = 4 * (-11), and -11 = 1 mod 4 is already fundamental
    Thresholds t12 = thresholds(FrobeniusParams::create(12, 2));
    CHECK(t12.fundamental_disc == -11);

    // delta = -8: squarefree part -2, so D_K = -8
    Thresholds t20 = thresholds(FrobeniusParams::create(2, 0));
    CHECK(t20.fundamental_disc == -8);
}

TEST_CASE("height deviation reports") {
    auto params = FrobeniusParams::create(2, 1);
    BoundReport r1 = cyclo_height_check(params, 1);
    CHECK(r1.holds == Verdict::pass);
    CHECK(r1.lhs == doctest::Approx(0.0).epsilon(1e-20));

    BoundReport r6 = cyclo_height_check(params, 6);
    CHECK(r6.holds == Verdict::pass);
    CHECK(r6.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-12));  // Psi_6 = 1

    BoundReport r12 = cyclo_height_check(FrobeniusParams::create(5, 3), 12);
    CHECK(r12.holds == Verdict::pass);
    CHECK(r12.in_proven_range);
}

TEST_CASE("arithmetic inequality reports at single points") {
    ArithProfile p12 = profile(12);
    auto reports12 = arith_inequality_reports(p12);
    for (const auto& r : reports12) {
        if (r.name == "divisor_count_upper") {
            CHECK(r.holds == Verdict::pass);
            CHECK(r.rhs == doctest::Approx(20.14496).epsilon(1e-4));
        }
        if (r.name == "divisor_vs_omega") CHECK(r.holds == Verdict::pass);
    }

    // squarefree n gives equality in tau >= 2^omega
    ArithProfile p30 = profile(30);
    for (const auto& r : arith_inequality_reports(p30)) {
        if (r.name == "divisor_vs_omega") {
            CHECK(r.holds == Verdict::pass);
            CHECK(r.lhs == r.rhs);
        }
    }

    // n = 2^k hits the exact tie in the divisor/omega chain
    ArithProfile p16 = profile(16);
    for (const auto& r : arith_inequality_reports(p16)) {
        if (r.name == "divisor_omega_upper") CHECK(r.holds == Verdict::pass);
    }

    // primorial of 59 is the first primorial past 1e20
    mpz_class primorial = 1;
    std::vector<std::pair<mpz_class, unsigned>> fs;
    for (uint32_t p : {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}) {
        primorial *= p;
        fs.emplace_back(p, 1);
    }
    ArithProfile pp = profile_from_factors(primorial, fs);
    bool seen = false;
    for (const auto& r : arith_inequality_reports(pp)) {
        if (r.name == "totient_lower") {
            seen = true;
            CHECK(r.holds == Verdict::pass);
            CHECK(r.in_proven_range);
        }
    }
    CHECK(seen);
}

TEST_CASE("case split report") {
    auto params = FrobeniusParams::create(2, 1);
    BoundReport r5 = case_split_report(params, 5);
    CHECK(std::stod(r5.details.at("split_sum")) == doctest::Approx(std::log(11.0)));
    CHECK(std::stod(r5.details.at("inert_sum")) == 0.0);
    CHECK(r5.holds == Verdict::not_applicable);
    CHECK_FALSE(r5.in_proven_range);

    BoundReport r4 = case_split_report(params, 4);
    CHECK(std::stod(r4.details.at("split_sum")) == 0.0);
    CHECK(std::stod(r4.details.at("inert_sum")) == 0.0);

    // the two sums partition at most the full factorization of Psi_n
    for (uint32_t n = 1; n <= 20; ++n) {
        BoundReport r = case_split_report(params, n);
        double total = std::stod(r.details.at("total"));
        double log_psi = std::stod(r.details.at("log_psi"));
        CHECK(total <= log_psi + 1e-9);
    }
}

TEST_CASE("inert prime count report") {
    auto params = FrobeniusParams::create(2, 1);
    BoundReport r = inert_prime_count_report(params, 16);
    CHECK(r.observed == Verdict::pass);
    CHECK(r.holds == Verdict::not_applicable);
    CHECK(r.details.count("census_count") == 1);
    CHECK(r.details.count("large_divisor_inverse_sum") == 1);

    CHECK_THROWS_AS(inert_prime_count_report(params, 12), PreconditionViolation);
    CHECK_THROWS_AS(inert_prime_count_report(FrobeniusParams::create(2, 2), 16),
                    PreconditionViolation);
}

TEST_CASE("empirical gamma valuations against the quadratic bound") {
    auto params = FrobeniusParams::create(2, 1);
    auto reports = gamma_valuation_vs_bound(params, 4);
    // N_4 = 16: no odd inert prime divides it
    CHECK(reports.empty());

    // N_8 = 288 = 2^5 * 3^2: the inert prime 3 has nu_3(gamma^8 - 1) = 1
    auto reports8 = gamma_valuation_vs_bound(params, 8);
    REQUIRE(reports8.size() == 1);
    const BoundReport& r = reports8[0];
    CHECK(r.lhs == 1.0);
    double expected = valuation_bound_quadratic(3, 0.5 * std::log(2.0), 8);
    CHECK(r.rhs == doctest::Approx(expected));
    CHECK(r.observed == Verdict::pass);
    CHECK_FALSE(r.in_proven_range);
    CHECK(r.holds == Verdict::not_applicable);

    CHECK_THROWS_AS(gamma_valuation_vs_bound(FrobeniusParams::create(2, 2), 8),
                    PreconditionViolation);
}

TEST_CASE("interval arithmetic basics") {
    Interval two = Interval::exact(2L, 128);
    Interval log2 = two.log();
    CHECK(log2.lo_d() <= 0.6931471805599453);
    CHECK(log2.hi_d() >= 0.6931471805599453);
    // the 128-bit interval is far tighter than its double projections
    CHECK(log2.hi_d() - log2.lo_d() < 1e-15);

    Interval half = Interval::ratio(1, 2, 128);
    Interval sum = half + half;
    CHECK(certify_le(sum, Interval::exact(1L, 128)) == Cert::holds);
    CHECK(certify_le(Interval::exact(1L, 128), sum) == Cert::holds);

    Interval neg = Interval::exact(-3L, 128);
    CHECK(neg.abs().lo_d() == 3.0);
    CHECK((neg * neg).lo_d() == 9.0);
    CHECK_THROWS_AS(neg.log(), DomainError);
}
