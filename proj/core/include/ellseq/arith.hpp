#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "ellseq/factor.hpp"

namespace ellseq {

/// Classical arithmetic functions of n, computed exactly from its prime
/// factorization. Divisor lists are materialized only while tau <= 1e6;
/// use for_each_divisor for anything larger.
struct ArithProfile {
    mpz_class n;
    mpz_class phi;
    uint64_t tau = 0;
    unsigned omega = 0;
    int mu = 0;  // -1, 0, +1
    std::vector<mpz_class> divisors;  // sorted ascending; empty if tau > 1e6
    std::vector<std::pair<mpz_class, unsigned>> factors;
};

/// Exact profile of n >= 1. Throws FactorizationExceeded when n does not
/// factor within the budget (trial division + rho covers n <= ~1e12 and
/// far beyond for smooth values).
ArithProfile profile(const mpz_class& n, const Budget& budget = {});

/// Profile from an already-known factorization (used for values built by
/// construction, e.g. primorials far beyond any factoring budget).
ArithProfile profile_from_factors(const mpz_class& n,
                                  const std::vector<std::pair<mpz_class, unsigned>>& factors);

/// Enumerates all divisors of the given factorization.
void for_each_divisor(const std::vector<std::pair<mpz_class, unsigned>>& factors,
                      const std::function<void(const mpz_class&)>& fn);

/// Kronecker symbol (D | p) for prime p. 0 iff p | D; for odd p this is
/// the Legendre symbol (Euler's criterion); for p = 2 the standard rule
/// on D mod 8 applies (0 if D even, +1 if D = ±1 mod 8, -1 otherwise).
int kronecker(const mpz_class& D, const mpz_class& p);

/// Sum of mu(d) over divisors d of n, with mu evaluated divisor by
/// divisor. Equals 1 for n = 1 and 0 otherwise; exercises the Moebius
/// machinery against that identity.
int mobius_sum_check(const mpz_class& n, const Budget& budget = {});

}  // namespace ellseq
