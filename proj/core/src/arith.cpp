#include "ellseq/arith.hpp"

#include <algorithm>

#include "ellseq/errors.hpp"

namespace ellseq {

namespace {

constexpr uint64_t kDivisorListCap = 1'000'000;

}  // namespace

ArithProfile profile_from_factors(
    const mpz_class& n, const std::vector<std::pair<mpz_class, unsigned>>& factors) {
    ArithProfile pr;
    pr.n = n;
    pr.factors = factors;
    std::sort(pr.factors.begin(), pr.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    pr.phi = n;
    pr.tau = 1;
    pr.omega = 0;
    pr.mu = 1;
    bool squarefree = true;
    for (const auto& [p, e] : pr.factors) {
        pr.phi /= p;
        pr.phi *= (p - 1);
        pr.tau *= (e + 1);
        pr.omega += 1;
        if (e > 1) squarefree = false;
    }
    pr.mu = squarefree ? (pr.omega % 2 == 0 ? 1 : -1) : 0;
    if (pr.tau <= kDivisorListCap) {
        pr.divisors.reserve(pr.tau);
        for_each_divisor(pr.factors, [&](const mpz_class& d) { pr.divisors.push_back(d); });
        std::sort(pr.divisors.begin(), pr.divisors.end());
    }
    return pr;
}

ArithProfile profile(const mpz_class& n, const Budget& budget) {
    if (n < 1) throw PreconditionViolation("profile: n must be >= 1");
    FactoredInteger f = factorize(n, budget);
    if (!f.complete())
        throw FactorizationExceeded("profile: factoring budget exhausted for n = " + n.get_str());
    auto factors = f.factors;
    if (f.cofactor_status == CofactorStatus::probable_prime) factors.emplace_back(f.cofactor, 1);
    return profile_from_factors(n, factors);
}

void for_each_divisor(const std::vector<std::pair<mpz_class, unsigned>>& factors,
                      const std::function<void(const mpz_class&)>& fn) {
    std::function<void(size_t, const mpz_class&)> rec = [&](size_t i, const mpz_class& d) {
        if (i == factors.size()) {
            fn(d);
            return;
        }
        mpz_class cur = d;
        for (unsigned e = 0; e <= factors[i].second; ++e) {
            rec(i + 1, cur);
            if (e < factors[i].second) cur *= factors[i].first;
        }
    };
    rec(0, 1);
}

int kronecker(const mpz_class& D, const mpz_class& p) {
    if (p < 2 || !is_probable_prime(p))
        throw PreconditionViolation("kronecker: p must be prime");
    if (p == 2) {
        if (mpz_even_p(D.get_mpz_t())) return 0;
        unsigned long r = mpz_fdiv_ui(D.get_mpz_t(), 8);  // floor mod: 0..7 also for D < 0
        return (r == 1 || r == 7) ? 1 : -1;
    }
    mpz_class r = D % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    // Euler's criterion
    mpz_class e = (p - 1) / 2, x;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (x == 1) return 1;
    if (x == p - 1) return -1;
    throw MismatchError("kronecker: Euler criterion returned a nonunit");
}

int mobius_sum_check(const mpz_class& n, const Budget& budget) {
    ArithProfile pr = profile(n, budget);
    long sum = 0;
    for_each_divisor(pr.factors, [&](const mpz_class& d) {
        // mu(d) from d's own factorization (d is smooth, so this is cheap)
        ArithProfile pd = profile(d, budget);
        sum += pd.mu;
    });
    return static_cast<int>(sum);
}

}  // namespace ellseq
