#include "ellseq/quad.hpp"

#include <stdexcept>

#include <mpfr.h>

namespace ellseq {

namespace {

// log of a positive mpz, correctly rounded to double via a 128-bit pass
double log_mpz(const mpz_class& v) {
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_z(t, v.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

}  // namespace

FrobeniusParams FrobeniusParams::create(const mpz_class& q, const mpz_class& a) {
    if (q < 2) throw std::invalid_argument("FrobeniusParams: q must be >= 2");
    mpz_class delta = a * a - 4 * q;
    if (delta >= 0)
        throw std::invalid_argument("FrobeniusParams: need a^2 < 4q (got a^2 - 4q = " +
                                    delta.get_str() + ")");
    return FrobeniusParams{q, a, delta};
}

QuadInt quad_mul(const QuadInt& u, const QuadInt& v, const FrobeniusParams& params) {
    // (x1 + y1 a)(x2 + y2 a) with a^2 = a*a - q
    mpz_class yy = u.y * v.y;
    return QuadInt{u.x * v.x - params.q * yy, u.x * v.y + u.y * v.x + params.a * yy};
}

QuadInt quad_conj(const QuadInt& u, const FrobeniusParams& params) {
    return QuadInt{u.x + params.a * u.y, -u.y};
}

QuadInt quad_pow(const QuadInt& u, uint64_t k, const FrobeniusParams& params) {
    QuadInt result = quad_one();
    QuadInt base = u;
    while (k > 0) {
        if (k & 1) result = quad_mul(result, base, params);
        k >>= 1;
        if (k > 0) base = quad_mul(base, base, params);
    }
    return result;
}

NormTrace norm_trace(const QuadInt& u, const FrobeniusParams& params) {
    return NormTrace{u.x * u.x + params.a * u.x * u.y + params.q * u.y * u.y,
                     2 * u.x + params.a * u.y};
}

GammaClass gamma_class(const FrobeniusParams& params) {
    GammaClass g;
    const mpz_class a2 = params.a * params.a;
    if (a2 == 0) {
        g.order_of_unity = 2;  // gamma = -1
    } else if (a2 == params.q) {
        g.order_of_unity = 3;
    } else if (a2 == 2 * params.q) {
        g.order_of_unity = 4;
    } else if (a2 == 3 * params.q) {
        g.order_of_unity = 6;
    }
    if (g.order_of_unity != 0) return g;

    // minimal polynomial of gamma: q x^2 - (a^2 - 2q) x + q, content-reduced
    mpz_class mid = a2 - 2 * params.q;
    mpz_class content;
    mpz_gcd(content.get_mpz_t(), params.q.get_mpz_t(), mid.get_mpz_t());
    g.mahler_measure = params.q / content;
    g.height = 0.5 * log_mpz(g.mahler_measure);
    return g;
}

double height_alpha(const FrobeniusParams& params) { return 0.5 * log_mpz(params.q); }

}  // namespace ellseq
