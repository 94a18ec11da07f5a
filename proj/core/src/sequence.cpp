#include "ellseq/sequence.hpp"

#include <algorithm>

#include "ellseq/errors.hpp"

namespace ellseq {

namespace {

// P *= (t^d - 1), in place
void mul_binomial(std::vector<mpz_class>& c, uint32_t d) {
    size_t old = c.size();
    c.resize(old + d);
    for (size_t i = c.size(); i-- > 0;) {
        mpz_class v = (i >= d && i - d < old) ? c[i - d] : mpz_class(0);
        if (i < old) v -= c[i];
        c[i] = v;
    }
}

// P /= (t^d - 1); division is exact by construction (asserted)
void div_binomial(std::vector<mpz_class>& c, uint32_t d) {
    // P[i] = Q[i-d] - Q[i]  =>  Q[i] = Q[i-d] - P[i]
    std::vector<mpz_class> q(c.size() - d);
    for (size_t i = 0; i < q.size(); ++i) {
        q[i] = (i >= d ? q[i - d] : mpz_class(0)) - c[i];
    }
    // top d coefficients must be consistent
    for (size_t i = q.size(); i < c.size(); ++i) {
        mpz_class expect = (i >= d && i - d < q.size()) ? q[i - d] : mpz_class(0);
        if (expect != c[i]) throw MismatchError("cyclotomic_poly: inexact binomial division");
    }
    c = std::move(q);
}

}  // namespace

std::vector<mpz_class> trace_seq(const FrobeniusParams& params, uint32_t n_max) {
    std::vector<mpz_class> t(n_max + 1);
    t[0] = 2;
    if (n_max >= 1) t[1] = params.a;
    for (uint32_t k = 2; k <= n_max; ++k) t[k] = params.a * t[k - 1] - params.q * t[k - 2];
    return t;
}

std::vector<mpz_class> lucas_u_seq(const FrobeniusParams& params, uint32_t n_max) {
    std::vector<mpz_class> u(n_max + 1);
    u[0] = 0;
    if (n_max >= 1) u[1] = 1;
    for (uint32_t k = 2; k <= n_max; ++k) u[k] = params.a * u[k - 1] - params.q * u[k - 2];
    return u;
}

mpz_class group_order(const FrobeniusParams& params, uint32_t n) {
    if (n < 1) throw PreconditionViolation("group_order: n must be >= 1");
    auto t = trace_seq(params, n);
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), params.q.get_mpz_t(), n);
    return qn + 1 - t[n];
}

mpz_class group_order_norm(const FrobeniusParams& params, uint32_t n) {
    if (n < 1) throw PreconditionViolation("group_order_norm: n must be >= 1");
    QuadInt an = quad_pow(quad_alpha(), n, params);
    an.x -= 1;
    return norm_trace(an, params).norm;
}

mpz_class power_discriminant(const FrobeniusParams& params, uint32_t n) {
    auto t = trace_seq(params, n);
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), params.q.get_mpz_t(), n);
    return t[n] * t[n] - 4 * qn;
}

OrderValue order_value(const FrobeniusParams& params, uint32_t n) {
    if (n < 1) throw PreconditionViolation("order_value: n must be >= 1");
    auto t = trace_seq(params, n);
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), params.q.get_mpz_t(), n);
    OrderValue v;
    v.n = n;
    v.t = t[n];
    v.N = qn + 1 - t[n];
    v.w = t[n] * t[n] - 4 * qn;
    return v;
}

std::vector<uint32_t> index_divisors(uint32_t n) {
    std::vector<uint32_t> ds;
    for (uint32_t d = 1; static_cast<uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

CycloPoly cyclotomic_poly(uint32_t n) {
    if (n < 1 || n > 1'000'000)
        throw PreconditionViolation("cyclotomic_poly: need 1 <= n <= 1e6");
    CycloPoly out;
    out.n = n;
    if (n == 1) {
        out.coeffs = {mpz_class(-1), mpz_class(1)};
        return out;
    }

    // distinct primes of n
    std::vector<uint32_t> primes;
    uint32_t m = n;
    for (uint32_t p = 2; static_cast<uint64_t>(p) * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(m);

    uint32_t rad = 1;
    for (uint32_t p : primes) rad *= p;
    const size_t k = primes.size();

    // divisors d of rad, tagged with mu(rad/d) = (-1)^(k - popcount)
    std::vector<uint32_t> mul_ds, div_ds;
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        uint32_t d = 1;
        unsigned bits = 0;
        for (size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                d *= primes[i];
                ++bits;
            }
        }
        if ((k - bits) % 2 == 0) {
            mul_ds.push_back(d);
        } else {
            div_ds.push_back(d);
        }
    }

    // multiply everything first: divisions then stay exact at every step
    std::vector<mpz_class> c{mpz_class(1)};
    for (uint32_t d : mul_ds) mul_binomial(c, d);
    for (uint32_t d : div_ds) div_binomial(c, d);

    // Phi_n(t) = Phi_rad(t^{n/rad})
    uint32_t spread = n / rad;
    if (spread == 1) {
        out.coeffs = std::move(c);
    } else {
        out.coeffs.assign((c.size() - 1) * spread + 1, mpz_class(0));
        for (size_t i = 0; i < c.size(); ++i) out.coeffs[i * spread] = c[i];
    }
    return out;
}

mpz_class cyclo_norm(const FrobeniusParams& params, uint32_t n) {
    if (n < 1) throw PreconditionViolation("cyclo_norm: n must be >= 1");
    CycloPoly phi = cyclotomic_poly(n);
    QuadInt acc{phi.coeffs.back(), 0};
    for (size_t i = phi.coeffs.size() - 1; i-- > 0;) {
        acc = quad_mul(acc, quad_alpha(), params);
        acc.x += phi.coeffs[i];
    }
    mpz_class norm = norm_trace(acc, params).norm;
    if (norm <= 0) throw MismatchError("cyclo_norm: norm must be positive");
    return norm;
}

OrderProductCheck order_product_check(const FrobeniusParams& params, uint32_t n) {
    if (n < 1) throw PreconditionViolation("order_product_check: n must be >= 1");
    OrderProductCheck check;
    check.n_value = group_order(params, n);
    mpz_class prod = 1;
    for (uint32_t d : index_divisors(n)) {
        mpz_class psi = cyclo_norm(params, d);
        prod *= psi;
        check.cyclo_factors.emplace_back(d, psi);
    }
    if (prod != check.n_value)
        throw MismatchError("order_product_check: prod Psi_d != N_n for n = " +
                            std::to_string(n));
    return check;
}

}  // namespace ellseq
