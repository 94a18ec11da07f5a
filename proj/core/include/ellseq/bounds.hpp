#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "ellseq/arith.hpp"
#include "ellseq/factor.hpp"
#include "ellseq/quad.hpp"

namespace ellseq {

/// exp applied `depth` times to `value`. Represents thresholds like
/// exp(exp(1e10)) that no direct numeric type can hold. Comparison is
/// total and agrees with real comparison whenever both sides are
/// directly representable.
struct IteratedLog {
    unsigned depth = 0;
    double value = 0.0;
};

IteratedLog exp_tower(unsigned depth, double value);
/// -1, 0, +1 as the represented real of a is <, ==, > that of b.
int compare(const IteratedLog& a, const IteratedLog& b);
std::string to_string(const IteratedLog& t);

enum class Verdict { pass, fail, inconclusive, not_applicable };
const char* to_string(Verdict v);

/// Outcome of one named inequality check. `observed` is what the numbers
/// show at this input; `holds` repeats it only when the input lies in the
/// inequality's proven range, and is not_applicable otherwise, so that
/// desk-scale observations are never misreported as theorem verification.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Verdict observed = Verdict::not_applicable;
    Verdict holds = Verdict::not_applicable;
    bool in_proven_range = false;
    double slack = 0.0;  // rhs - lhs when both are finite
    std::map<std::string, std::string> details;
};

/// RHS of the degree-d valuation bound:
///   Np * exp(-0.002 d^{-1} log Np / loglog Np) * h * log* n.
/// Requires Np > e so that loglog is defined and positive.
double valuation_bound_rational(double Np, unsigned d, double h, uint64_t n);

/// RHS of the quadratic norm-1 valuation bound:
///   p * exp(-0.001 log p / loglog p) * h * log* n.  Requires p > e.
double valuation_bound_quadratic(const mpz_class& p, double h, uint64_t n);

/// log of the guaranteed prime-divisor size: log n + 0.0001 log n / loglog n.
/// Requires n >= 16.
double prime_divisor_log_bound(uint64_t n);

struct Thresholds {
    IteratedLog n0;      // exp(exp(max{1e10, 3q}))
    IteratedLog p0_quad; // exp(exp(max{1e8, 2|D_K|}))
    IteratedLog p0_rat;  // exp(80000 * d * (log* d)^2) at d = 2, i.e. exp(160000)
    mpz_class fundamental_disc;  // D_K of Q(sqrt(delta))
};
Thresholds thresholds(const FrobeniusParams& params, const Budget& budget = {});

/// Certified check that log Psi_n / 2 deviates from phi(n) log(q) / 2 by
/// at most 5 in absolute value. Unconditional, so in_proven_range = true.
BoundReport cyclo_height_check(const FrobeniusParams& params, uint32_t n,
                               mpfr_prec_t prec = 128);

/// The four arithmetic-function inequality reports at one n:
///   divisor_count_upper : tau(n) <= exp(1.1 log n / loglog n)      (n >= 3)
///   omega_upper         : omega(n) <= 1.4 log n / loglog n          (n >= 16)
///   divisor_vs_omega    : tau(n) >= 2^omega(n)                      (exact, all n)
///   divisor_omega_upper : tau(n) <= (log2 n + 1)^omega
///                         and (log2 n + 1)^omega <= exp(2 omega loglog n)  (n >= 16)
///   totient_lower       : phi(n) >= 0.5 n / loglog n                (n >= 1e20)
/// totient_lower is emitted only when `profile.n >= 1e20`.
std::vector<BoundReport> arith_inequality_reports(const ArithProfile& profile,
                                                  mpfr_prec_t prec = 128);

/// A = sum of nu_p(Psi_n) log p over split primes with a primitive prime
/// of the quadratic field at level n, B = the same over inert primes;
/// ramified primes are excluded. Reports A, B, A+B against
/// 0.4 phi(n) log q. Observational at desk scale (proven range starts at
/// astronomically large n). Requires n >= 10 and a complete factorization.
BoundReport case_split_report(const FrobeniusParams& params, uint32_t n,
                              const Budget& budget = {});

/// Builds the set of inert primes dividing N_n, their level gaps
/// d_p = n / gamma_rank(p), filters to d_p < tau(n) log n, and compares the
/// resulting count to (P/n + 1) exp(80 log n logloglog n / (loglog n)^2).
/// Ingredient quantities (divisor census, tail sums) land in details.
/// Requires n >= 16, gamma not a root of unity, complete factorization.
BoundReport inert_prime_count_report(const FrobeniusParams& params, uint32_t n,
                                     const Budget& budget = {});

/// One report per inert prime p | N_n (odd, away from 2q, gamma
/// nondegenerate): the measured nu_p(gamma^n - 1) against the quadratic
/// valuation bound at (p, h(gamma), n). Desk-scale p sits far below the
/// bound's proven threshold, so the reports are always observational.
std::vector<BoundReport> gamma_valuation_vs_bound(const FrobeniusParams& params, uint32_t n,
                                                  const Budget& budget = {});

}  // namespace ellseq
