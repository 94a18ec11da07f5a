#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ellseq/factor.hpp"
#include "ellseq/quad.hpp"

namespace ellseq {

enum class PrimeKind { split, inert, ramified };
const char* to_string(PrimeKind k);

struct PrimeClassification {
    mpz_class p;
    PrimeKind kind;
};

/// split / inert / ramified in Q(sqrt(delta)), decided by kronecker(delta, p).
PrimeClassification classify_prime(const FrobeniusParams& params, const mpz_class& p);

/// z(p): least n <= n_max with p | N_n, or nullopt.
std::optional<uint32_t> rank_of_apparition(const FrobeniusParams& params, const mpz_class& p,
                                           uint32_t n_max);

/// Valuation data for one prime against index n.
///
/// `rank`/`primitive` use the rational sequence N_m (primitive means
/// z(p) = n). `k_primitive` is the finer field-level notion: some prime of
/// Q(alpha) above p divides alpha^n - 1 but no earlier alpha^m - 1. The two
/// notions genuinely differ (split p can meet the two field primes at
/// different indices; for inert p the rational rank tracks alpha, not the
/// ratio gamma), and the congruence facts attach to the field-level data,
/// so both are carried.
struct ValuationRecord {
    mpz_class p;
    uint32_t n = 0;
    unsigned nu_Nn = 0;
    unsigned nu_Psi_n = 0;
    std::optional<uint32_t> rank;
    bool primitive = false;
    PrimeKind kind = PrimeKind::split;
    bool k_primitive = false;
    /// inert p away from 2q with gamma not a root of unity: least m | n
    /// with p | w_m, the rank of p in the gamma-sequence.
    std::optional<uint32_t> gamma_rank;
};

struct PrimitiveScan {
    uint32_t n = 0;
    FactoredInteger order_factored;  // merged factorization of N_n
    mpz_class psi;                   // Psi_n
    std::vector<ValuationRecord> primitive;     // rank == n
    std::vector<ValuationRecord> nonprimitive;  // rank < n
    bool complete = false;  // false when a composite_unknown cofactor remains
};

/// Per-parameter cache of Psi_d values and factorizations. Grid drivers
/// touch every divisor level many times; one instance per worker keeps
/// the work linear. Not thread-safe; share nothing across threads.
class PsiFactorCache {
  public:
    PsiFactorCache(const FrobeniusParams& params, const Budget& budget);

    const FrobeniusParams& params() const { return params_; }
    const mpz_class& psi(uint32_t d);
    const FactoredInteger& psi_factors(uint32_t d);
    /// Factorization of N_n merged from the Psi_d pieces for d | n
    /// (the pieces are far smaller than N_n, so the budget goes further).
    FactoredInteger merged_order(uint32_t n);

  private:
    FrobeniusParams params_;
    Budget budget_;
    std::vector<mpz_class> psi_;                  // index d, 0 unused
    std::vector<char> psi_ready_;
    std::vector<FactoredInteger> psi_factored_;
    std::vector<char> factored_ready_;
    void ensure(uint32_t d);
};

/// Classifies every identified prime of N_n. With an incomplete
/// factorization the lists are a verified subset and complete = false.
PrimitiveScan primitive_primes(const FrobeniusParams& params, uint32_t n,
                               const Budget& budget = {});
PrimitiveScan primitive_primes(PsiFactorCache& cache, uint32_t n);

/// Factorization of N_n assembled piecewise from the Psi_d for d | n.
FactoredInteger factor_group_order(const FrobeniusParams& params, uint32_t n,
                                   const Budget& budget = {});

enum class CongruenceStatus { ok, skipped_ramified };

/// Congruence facts checked for one primitive prime (rank = n, n >= 3):
///   - norm congruence: N(pr) = p^f = 1 mod n, hence N(pr) >= n + 1;
///   - split: p = +1 mod n;
///   - inert: p = -1 mod gamma_rank(p) (the signed congruence lives on the
///     gamma-sequence level; `signed_modulus` records which modulus was
///     used and equals n exactly when gamma_rank = n).
/// Ramified p are reported as skipped, never asserted. A failed assertion
/// throws CongruenceViolation (it would falsify a proven statement).
struct CongruenceVerdict {
    CongruenceStatus status = CongruenceStatus::ok;
    bool norm_congruence = false;       // N(pr) = 1 mod n verified
    bool norm_at_least_n_plus_1 = false;
    std::optional<uint32_t> signed_modulus;  // modulus of the +-1 congruence checked
    std::string note;
};
CongruenceVerdict check_congruence(const FrobeniusParams& params, const ValuationRecord& rec);

/// For n >= 8, every p | Psi_n with no primitive field prime at level n
/// must satisfy nu_p(Psi_n) <= 2 nu_p(n). Violations are returned, not
/// thrown (a genuine one would falsify the norm form of the statement).
struct NonprimitiveCheck {
    struct Entry {
        mpz_class p;
        unsigned nu_psi = 0;
        unsigned bound = 0;  // 2 * nu_p(n)
        bool ok = false;
    };
    std::vector<Entry> checked;
    bool all_ok = true;
    bool complete = true;
};
NonprimitiveCheck nonprimitive_valuation_check(const FrobeniusParams& params, uint32_t n,
                                               const Budget& budget = {});

/// nu_p(gamma^n - 1) = nu_p(|w_n|) / 2 for inert p not dividing 2 q delta,
/// gamma not a root of unity. nu_p(w_n) is even under these hypotheses
/// (w_n = delta * U_n^2); a violation throws MismatchError.
unsigned gamma_valuation(const FrobeniusParams& params, const mpz_class& p, uint32_t n);

/// Least m <= m_max with p | w_m (w_m != 0), or nullopt.
std::optional<uint32_t> gamma_rank_scan(const FrobeniusParams& params, const mpz_class& p,
                                        uint32_t m_max);

/// Independent route to the gamma rank: the multiplicative order of
/// gamma = conj(alpha)/alpha in the residue field of p^2 elements, found
/// by modular exponentiation over the divisors of p + 1 (gamma has norm
/// 1, so its order divides p + 1). Same preconditions as gamma_valuation.
uint32_t gamma_order_oracle(const FrobeniusParams& params, const mpz_class& p,
                            const Budget& budget = {});

enum class ParityBranch { odd_modulus, p3mod4, p1mod4 };
const char* to_string(ParityBranch b);

/// The unique residue class a_d of the congruence system
///   x = 1 mod d,   x = -1 mod modulus/d
/// where modulus = n for odd n and n/2 for even n, and d is a unitary
/// divisor of the modulus. For even n the branch tags which parity class
/// of primes produces the divisor d (d odd for p = 3 mod 4; modulus/d odd
/// for p = 1 mod 4); the residue itself depends only on d.
struct CrtClass {
    uint32_t n = 0;
    uint32_t d = 0;
    uint32_t modulus = 0;
    mpz_class residue;  // in [1, modulus-1] (0 for the degenerate modulus 1)
    ParityBranch branch = ParityBranch::odd_modulus;
};
CrtClass crt_class(uint32_t n, uint32_t d,
                   std::optional<ParityBranch> branch = std::nullopt);

/// count = #{d | n : d < tau(n) log n}; bound = the census estimate
/// exp(70 log n logloglog n / (loglog n)^2). The comparison flag is
/// observational: the estimate is proven only far beyond any testable n.
struct DivisorCensus {
    uint64_t count = 0;
    double cutoff = 0.0;
    double bound = 0.0;
    bool count_le_bound = false;
};
DivisorCensus small_divisor_census(const mpz_class& n, const Budget& budget = {});

/// True when a prime of Q(alpha) above p is primitive for alpha^n - 1:
/// split p: one of the unit roots of x^2 - a x + q mod p has order n;
/// inert / ramified p: the rational rank of apparition equals n.
bool has_primitive_field_prime(const FrobeniusParams& params, const mpz_class& p,
                               PrimeKind kind, uint32_t n);

/// Square root mod an odd prime (Tonelli-Shanks). Returns nullopt when a
/// is a nonresidue. a is reduced mod p; p odd prime.
std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p);

}  // namespace ellseq
