#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ellseq/quad.hpp"

namespace ellseq {

/// Trace sequence t_0..t_nmax: t_0 = 2, t_1 = a, t_{k+1} = a t_k - q t_{k-1}.
/// t_n is the trace of alpha^n.
std::vector<mpz_class> trace_seq(const FrobeniusParams& params, uint32_t n_max);

/// Companion sequence U_0..U_nmax with U_0 = 0, U_1 = 1 and the same
/// recurrence; U_n = (alpha^n - conj(alpha)^n) / (alpha - conj(alpha)).
std::vector<mpz_class> lucas_u_seq(const FrobeniusParams& params, uint32_t n_max);

/// N_n = q^n + 1 - t_n, the group order over the degree-n extension.
mpz_class group_order(const FrobeniusParams& params, uint32_t n);

/// N_n computed the second way, as norm(alpha^n - 1).
mpz_class group_order_norm(const FrobeniusParams& params, uint32_t n);

/// w_n = t_n^2 - 4 q^n = (alpha^n - conj(alpha)^n)^2 = delta * U_n^2.
/// Negative whenever gamma^n != 1, zero exactly when gamma^n = 1.
mpz_class power_discriminant(const FrobeniusParams& params, uint32_t n);

struct OrderValue {
    uint32_t n = 0;
    mpz_class t;
    mpz_class N;
    mpz_class w;
};
OrderValue order_value(const FrobeniusParams& params, uint32_t n);

/// Cyclotomic polynomial, coefficients low-to-high, degree phi(n).
struct CycloPoly {
    uint32_t n = 0;
    std::vector<mpz_class> coeffs;
};

/// Exact coefficients for 1 <= n <= 1e6, via the Moebius product of
/// (t^d - 1)^{mu(rad/d)} over divisors d of the radical, then t -> t^{n/rad}.
CycloPoly cyclotomic_poly(uint32_t n);

/// Psi_n = Phi_n(alpha) * Phi_n(conj(alpha)) = |Phi_n(alpha)|^2, a positive
/// integer, computed by Horner evaluation in Z[alpha] followed by the norm.
mpz_class cyclo_norm(const FrobeniusParams& params, uint32_t n);

struct OrderProductCheck {
    mpz_class n_value;                                       // N_n
    std::vector<std::pair<uint32_t, mpz_class>> cyclo_factors;  // (d, Psi_d) for d | n
};

/// Verifies N_n = prod_{d | n} Psi_d exactly and returns the factor list.
/// Throws MismatchError on disagreement (would signal an arithmetic bug).
OrderProductCheck order_product_check(const FrobeniusParams& params, uint32_t n);

/// Divisors of a small index n (ascending). Helper shared by the modules
/// that sum over d | n.
std::vector<uint32_t> index_divisors(uint32_t n);

}  // namespace ellseq
