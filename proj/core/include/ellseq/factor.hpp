#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ellseq {

/// Work limits for factorization. Budgets are expressed in deterministic
/// units (trial-division bound, rho iteration count) so that two runs on
/// the same input produce identical output.
struct Budget {
    uint64_t trial_bound = 1'000'000;     ///< trial division covers primes <= this
    uint64_t rho_iterations = 1'000'000;  ///< total Brent-rho steps per factorize() call
};

enum class CofactorStatus { unit, probable_prime, composite_unknown };

/// A (possibly partial) factorization: value = cofactor * prod p_i^e_i.
/// Every listed prime is proven prime (deterministic Miller-Rabin range);
/// the cofactor carries whatever could not be resolved within budget.
struct FactoredInteger {
    mpz_class value{1};
    std::vector<std::pair<mpz_class, unsigned>> factors;  // sorted ascending
    mpz_class cofactor{1};
    CofactorStatus cofactor_status = CofactorStatus::unit;

    bool complete() const { return cofactor_status != CofactorStatus::composite_unknown; }
    mpz_class reconstruct() const;
};

/// Sorted primes below one million (shared immutable table).
const std::vector<uint32_t>& small_primes();

/// Strong probable-prime test. Deterministic (correct) for
/// n < 3317044064679887385961981 via a fixed base set; at least 40
/// rounds with bases drawn from an n-seeded generator beyond that.
bool is_probable_prime(const mpz_class& n);

/// Trial division + Brent-cycle Pollard rho under a deterministic budget.
/// Never throws on budget exhaustion: the leftover lands in the cofactor.
FactoredInteger factorize(const mpz_class& n, const Budget& budget = {});

/// Largest prime factor known from f, and whether it is provably the
/// largest prime factor of f.value. P(1) = 1 by convention.
std::pair<mpz_class, bool> largest_known_prime_factor(const FactoredInteger& f);

/// nu_p(n): largest e with p^e | n. Requires n >= 1, p >= 2.
unsigned valuation(const mpz_class& n, const mpz_class& p);

}  // namespace ellseq
