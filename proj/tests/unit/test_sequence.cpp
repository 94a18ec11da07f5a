#include <complex>
#include <random>

#include <doctest.h>

#include "ellseq/arith.hpp"
#include "ellseq/errors.hpp"
#include "ellseq/sequence.hpp"

using namespace ellseq;

TEST_CASE("trace recurrence values") {
    auto params = FrobeniusParams::create(2, 1);
    auto t = trace_seq(params, 11);
    CHECK(t[0] == 2);
    CHECK(t[1] == 1);
    CHECK(t[2] == -3);
    CHECK(t[3] == -5);
    CHECK(t[4] == 1);
    CHECK(t[5] == 11);
    CHECK(t[11] == 67);
    CHECK(trace_seq(FrobeniusParams::create(7, -3), 0)[0] == 2);
}

TEST_CASE("traces match direct complex powers") {
    // alpha = (1 + i sqrt 7) / 2 for (q, a) = (2, 1)
    auto params = FrobeniusParams::create(2, 1);
    auto t = trace_seq(params, 40);
    std::complex<double> alpha(0.5, 0.5 * std::sqrt(7.0));
    std::complex<double> power(1.0, 0.0);
    for (uint32_t n = 1; n <= 40; ++n) {
        power *= alpha;
        double re = 2.0 * power.real();
        CHECK(mpz_class(static_cast<long>(std::llround(re))) == t[n]);
    }
}

TEST_CASE("group order values") {
    auto params = FrobeniusParams::create(2, 1);
    CHECK(group_order(params, 1) == 2);  // q - a + 1
    CHECK(group_order(params, 3) == 14);
    CHECK(group_order(params, 4) == 16);
    CHECK(group_order(params, 11) == 1982);
}

TEST_CASE("two group-order routes agree") {
    for (int64_t q = 2; q <= 5; ++q) {
        for (int64_t a = -q; a <= q; ++a) {
            if (a * a >= 4 * q) continue;
            auto params = FrobeniusParams::create(q, a);
            for (uint32_t n = 1; n <= 60; ++n) {
                CHECK(group_order(params, n) == group_order_norm(params, n));
            }
        }
    }
}

TEST_CASE("cyclotomic polynomials") {
    CycloPoly p1 = cyclotomic_poly(1);
    CHECK(p1.coeffs == std::vector<mpz_class>{-1, 1});

    CycloPoly p6 = cyclotomic_poly(6);
    CHECK(p6.coeffs == std::vector<mpz_class>{1, -1, 1});

    // first index whose coefficients leave {-1, 0, 1}
    CycloPoly p105 = cyclotomic_poly(105);
    CHECK(p105.coeffs.size() == 49);  // phi(105) + 1
    CHECK(p105.coeffs[7] == -2);
    mpz_class lowest = 0;
    for (const auto& c : p105.coeffs) lowest = std::min(lowest, c);
    CHECK(lowest == -2);
    for (uint32_t n = 1; n < 105; ++n) {
        for (const auto& c : cyclotomic_poly(n).coeffs) {
            CHECK(abs(c) <= 1);
        }
    }
}

TEST_CASE("cyclotomic product recovers t^n - 1") {
    for (uint32_t n = 1; n <= 200; ++n) {
        std::vector<mpz_class> prod{1};
        for (uint32_t d : index_divisors(n)) {
            CycloPoly phi = cyclotomic_poly(d);
            std::vector<mpz_class> next(prod.size() + phi.coeffs.size() - 1, mpz_class(0));
            for (size_t i = 0; i < prod.size(); ++i) {
                for (size_t j = 0; j < phi.coeffs.size(); ++j) {
                    next[i + j] += prod[i] * phi.coeffs[j];
                }
            }
            prod = std::move(next);
        }
        REQUIRE(prod.size() == n + 1);
        CHECK(prod[0] == -1);
        CHECK(prod[n] == 1);
        for (size_t i = 1; i < n; ++i) CHECK(prod[i] == 0);
    }
}

TEST_CASE("cyclotomic norms") {
    auto params = FrobeniusParams::create(2, 1);
    CHECK(cyclo_norm(params, 1) == 2);  // Psi_1 = N_1
    CHECK(cyclo_norm(params, 5) == 11);
    CHECK(cyclo_norm(params, 6) == 1);  // Phi_6(alpha) = -1 in Z[alpha]
}

TEST_CASE("order product check") {
    auto params = FrobeniusParams::create(2, 1);
    OrderProductCheck check = order_product_check(params, 6);
    CHECK(check.n_value == 56);
    REQUIRE(check.cyclo_factors.size() == 4);
    CHECK(check.cyclo_factors[0] == std::pair<uint32_t, mpz_class>{1, 2});
    CHECK(check.cyclo_factors[1] == std::pair<uint32_t, mpz_class>{2, 4});
    CHECK(check.cyclo_factors[2] == std::pair<uint32_t, mpz_class>{3, 7});
    CHECK(check.cyclo_factors[3] == std::pair<uint32_t, mpz_class>{6, 1});

    CHECK(order_product_check(FrobeniusParams::create(5, -2), 1).n_value ==
          group_order(FrobeniusParams::create(5, -2), 1));
    CHECK_NOTHROW(order_product_check(FrobeniusParams::create(3, 1), 4));
}

TEST_CASE("cyclotomic norm equals the moebius quotient of group orders") {
    // independent route: Psi_n = prod_{d | n} N_d^{mu(n/d)}
    for (auto [q, a] : {std::pair<int64_t, int64_t>{2, 1}, {3, -2}, {7, 4}}) {
        auto params = FrobeniusParams::create(q, a);
        std::vector<mpz_class> N(41);
        for (uint32_t n = 1; n <= 40; ++n) N[n] = group_order(params, n);
        for (uint32_t n = 1; n <= 40; ++n) {
            mpz_class num = 1, den = 1;
            for (uint32_t d : index_divisors(n)) {
                int mu = profile(n / d).mu;
                if (mu == 1) num *= N[d];
                if (mu == -1) den *= N[d];
            }
            CHECK(num % den == 0);
            CHECK(cyclo_norm(params, n) == num / den);
        }
    }
}

TEST_CASE("power discriminant identity and sign") {
    for (int64_t q = 2; q <= 9; ++q) {
        for (int64_t a = -q; a <= q; ++a) {
            if (a * a >= 4 * q) continue;
            auto params = FrobeniusParams::create(q, a);
            auto u = lucas_u_seq(params, 30);
            for (uint32_t n = 1; n <= 30; ++n) {
                mpz_class w = power_discriminant(params, n);
                CHECK(w == params.delta * u[n] * u[n]);
                CHECK(w <= 0);
                if (!gamma_is_degenerate(params)) CHECK(w < 0);
            }
        }
    }
}

TEST_CASE("order values satisfy the strict trace bound") {
    auto params = FrobeniusParams::create(23, 9);
    mpz_class qn = 1;
    for (uint32_t n = 1; n <= 40; ++n) {
        qn *= params.q;
        OrderValue v = order_value(params, n);
        CHECK(v.t * v.t < 4 * qn);
        CHECK(v.N > 0);
        CHECK(v.N == qn + 1 - v.t);
    }
}

TEST_CASE("index divisors") {
    CHECK(index_divisors(1) == std::vector<uint32_t>{1});
    CHECK(index_divisors(12) == std::vector<uint32_t>{1, 2, 3, 4, 6, 12});
}
