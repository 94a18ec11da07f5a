#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace ellseq {

/// Parameters (q, a) with q >= 2 and a^2 < 4q. They fix the quadratic
/// x^2 - a x + q with complex-conjugate roots alpha, conj(alpha) of
/// absolute value sqrt(q), and the order Z[alpha] all arithmetic here
/// lives in. delta = a^2 - 4q < 0 is the discriminant.
struct FrobeniusParams {
    mpz_class q;
    mpz_class a;
    mpz_class delta;

    /// Validates q >= 2 and a^2 < 4q; throws std::invalid_argument otherwise.
    static FrobeniusParams create(const mpz_class& q, const mpz_class& a);
};

/// x + y*alpha with exact integer coordinates on the basis (1, alpha).
struct QuadInt {
    mpz_class x;
    mpz_class y;

    bool operator==(const QuadInt&) const = default;
};

inline QuadInt quad_one() { return {1, 0}; }
inline QuadInt quad_alpha() { return {0, 1}; }

/// Product in Z[alpha], reduced via alpha^2 = a*alpha - q.
QuadInt quad_mul(const QuadInt& u, const QuadInt& v, const FrobeniusParams& params);

/// Conjugate: x + y*conj(alpha) = (x + a y) - y*alpha.
QuadInt quad_conj(const QuadInt& u, const FrobeniusParams& params);

/// u^k by binary exponentiation; quad_pow(u, 0) = 1.
QuadInt quad_pow(const QuadInt& u, uint64_t k, const FrobeniusParams& params);

struct NormTrace {
    mpz_class norm;   // x^2 + a x y + q y^2, >= 0 with equality only at 0
    mpz_class trace;  // 2x + a y
};
NormTrace norm_trace(const QuadInt& u, const FrobeniusParams& params);

/// Classification of gamma = conj(alpha)/alpha, the norm-1 ratio of the
/// two roots. gamma is a root of unity exactly when a^2 is one of
/// 0, q, 2q, 3q (orders 2, 3, 4, 6); otherwise its logarithmic height is
/// log(mahler_measure)/2 with mahler_measure = q / gcd(q, a^2 - 2q), the
/// leading coefficient of the content-reduced minimal polynomial
/// q x^2 - (a^2 - 2q) x + q, whose roots lie on the unit circle.
struct GammaClass {
    unsigned order_of_unity = 0;  // 0 means not a root of unity
    double height = 0.0;
    mpz_class mahler_measure{1};  // exact argument of the height logarithm
};

GammaClass gamma_class(const FrobeniusParams& params);

inline bool gamma_is_degenerate(const FrobeniusParams& params);

/// h(alpha) = log(q)/2. The exact log argument is params.q.
double height_alpha(const FrobeniusParams& params);

bool gamma_is_degenerate(const FrobeniusParams& params) {
    const mpz_class a2 = params.a * params.a;
    return a2 == 0 || a2 == params.q || a2 == 2 * params.q || a2 == 3 * params.q;
}

}  // namespace ellseq
