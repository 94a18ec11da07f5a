#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace ellseq {

/// An S-unit counting instance: Theta(x, S) counts the integers in [1, x]
/// whose prime factors all lie in S.
struct SUnitInstance {
    double x = 0;
    std::vector<uint64_t> primes;  // distinct, ascending

    size_t k() const { return primes.size(); }
};

enum class ThetaVariant {
    trivial,       // x >= 7:              exp(2 k loglog x)
    large_primes,  // x >= 3, p >= sqrt(k): exp(10 (log x / log* k) log*(k log* k / log x))
    general,       // x >= 3:  exp(2 sqrt(k) loglog x + 20 (log x / log* k) log*(k log* k / log x))
};

/// Exact count by depth-first enumeration over exponent vectors in
/// lexicographic order, pruned by the running product. Guarded before
/// enumeration by the trivial bound; throws EnumerationTooLarge when the
/// guard cannot certify count <= 1e9.
uint64_t theta_exact(const SUnitInstance& inst);

/// All S-units <= x, ascending (the enumeration behind theta_exact;
/// exposed so oracles can compare whole prefix-count functions).
std::vector<uint64_t> theta_enumerate(const SUnitInstance& inst);

/// Right-hand side of the requested upper bound, evaluated with
/// log* = max{log, 1} (extended by 1 at nonpositive arguments).
/// Throws PreconditionViolation when the variant's hypothesis fails.
double theta_bound(const SUnitInstance& inst, ThetaVariant variant);

/// log* = max{log, 1}, with log*(t) = 1 for t <= 0.
double log_star(double t);

struct CompositionCount {
    mpz_class exact;   // #{a in Z_{>=0}^k : a_1+...+a_k <= ell} = C(k+ell, ell)
    mpz_class series;  // sum_{i=0}^{ell} C(k+i, i), the over-count the proof uses
};

/// Both counts; asserts exact <= series.
CompositionCount count_bounded_compositions(unsigned k, unsigned ell);

}  // namespace ellseq
