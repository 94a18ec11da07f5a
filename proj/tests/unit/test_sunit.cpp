#include <cmath>
#include <random>

#include <doctest.h>

#include "ellseq/errors.hpp"
#include "ellseq/sunit.hpp"

using namespace ellseq;

namespace {

// brute-force oracle: test every integer in [1, x] for S-smoothness
uint64_t brute_theta(uint64_t x, const std::vector<uint64_t>& s) {
    uint64_t count = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        uint64_t m = n;
        for (uint64_t p : s) {
            while (m % p == 0) m /= p;
        }
        if (m == 1) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("exact counts") {
    CHECK(theta_exact({10.0, {2, 3}}) == 7);  // 1, 2, 3, 4, 6, 8, 9
    CHECK(theta_exact({100.0, {2}}) == 7);    // 1, 2, 4, ..., 64
    CHECK(theta_exact({1.0, {}}) == 1);
    CHECK(theta_exact({1e9, {}}) == 1);
    CHECK(theta_exact({0.5, {2, 3}}) == 0);
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        uint64_t x = 1 + rng() % 3000;
        std::vector<uint64_t> s;
        for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
            if (rng() % 2) s.push_back(p);
        }
        SUnitInstance inst{static_cast<double>(x), s};
        CHECK(theta_exact(inst) == brute_theta(x, s));
        auto values = theta_enumerate(inst);
        CHECK(values.size() == brute_theta(x, s));
        CHECK(std::is_sorted(values.begin(), values.end()));
    }
}

TEST_CASE("bounds dominate the exact count") {
    SUnitInstance small{10.0, {2, 3}};
    double triv = theta_bound(small, ThetaVariant::trivial);
    CHECK(triv == doctest::Approx(std::exp(4.0 * std::log(std::log(10.0)))));
    CHECK(static_cast<double>(theta_exact(small)) <= triv);

    // degenerate k = 0 at x = 3: the log* conventions give exp(20 log 3)
    SUnitInstance empty{3.0, {}};
    CHECK(theta_bound(empty, ThetaVariant::general) ==
          doctest::Approx(std::exp(20.0 * std::log(3.0))));
    CHECK(theta_exact(empty) == 1);

    SUnitInstance large{1e6, {2, 3, 5, 7}};
    double lb = theta_bound(large, ThetaVariant::large_primes);
    CHECK(std::isfinite(lb));
    CHECK(static_cast<double>(theta_exact(large)) <= lb);
}

TEST_CASE("variant preconditions") {
    CHECK_THROWS_AS(theta_bound({5.0, {2}}, ThetaVariant::trivial), PreconditionViolation);
    CHECK_THROWS_AS(theta_bound({2.0, {2}}, ThetaVariant::general), PreconditionViolation);

    // k = 25 primes starting at 2: p = 2 < sqrt(25)
    std::vector<uint64_t> s;
    for (uint64_t p : {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                       43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
        s.push_back(p);
    }
    CHECK_THROWS_AS(theta_bound({100.0, s}, ThetaVariant::large_primes),
                    PreconditionViolation);

    CHECK_THROWS_AS(theta_exact({-1.0, {2}}), PreconditionViolation);
}

TEST_CASE("enumeration guard") {
    std::vector<uint64_t> s{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    CHECK_THROWS_AS(theta_exact({1e12, s}), EnumerationTooLarge);
}

TEST_CASE("monotonicity in x and in S") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        uint64_t x = 5 + rng() % 100000;
        std::vector<uint64_t> s{2, 5, 11};
        SUnitInstance inst{static_cast<double>(x), s};
        SUnitInstance wider{static_cast<double>(x + 1 + rng() % 1000), s};
        CHECK(theta_exact(inst) <= theta_exact(wider));
        SUnitInstance richer{static_cast<double>(x), {2, 3, 5, 11}};
        CHECK(theta_exact(inst) <= theta_exact(richer));
    }
}

TEST_CASE("bounded composition counts") {
    CompositionCount c22 = count_bounded_compositions(2, 2);
    CHECK(c22.exact == 6);
    CHECK(c22.series == 10);

    CHECK(count_bounded_compositions(17, 0).exact == 1);
    CHECK(count_bounded_compositions(1, 5).exact == 6);

    for (unsigned k = 1; k <= 6; ++k) {
        for (unsigned ell = 0; ell <= 8; ++ell) {
            // enumerate exponent vectors with sum <= ell
            uint64_t brute = 0;
            auto rec = [&](auto&& self, unsigned i, unsigned used) -> void {
                if (i == k) {
                    ++brute;
                    return;
                }
                for (unsigned v = 0; used + v <= ell; ++v) self(self, i + 1, used + v);
            };
            rec(rec, 0, 0);
            CompositionCount cc = count_bounded_compositions(k, ell);
            CHECK(cc.exact == static_cast<unsigned long>(brute));
            CHECK(cc.exact <= cc.series);
        }
    }
}
