#include "ellseq/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <random>

#include "ellseq/errors.hpp"

namespace ellseq {

namespace {

// Below this bound the fixed Miller-Rabin base set is a proven primality test.
const mpz_class& deterministic_mr_limit() {
    static const mpz_class limit("3317044064679887385961981");
    return limit;
}

constexpr uint32_t kFixedBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin_round(const mpz_class& n, const mpz_class& base, const mpz_class& d, unsigned s) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t seed_from(const mpz_class& n) {
    // stable across runs: fold the value into 64 bits
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < mpz_size(n.get_mpz_t()); ++i) {
        mp_limb_t limb = mpz_getlimbn(n.get_mpz_t(), i);
        h = (h ^ static_cast<uint64_t>(limb)) * 0x100000001b3ull;
    }
    return h;
}

// Brent's variant of Pollard rho on 64-bit values. Returns a nontrivial
// factor or 0 on budget exhaustion. `budget` is decremented in place.
uint64_t brent_rho_u64(uint64_t n, uint64_t c, uint64_t& budget) {
    if (n % 2 == 0) return 2;
    uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const uint64_t batch = 128;
    while (g == 1) {
        x = y;
        for (uint64_t i = 0; i < r; ++i) {
            if (budget == 0) return 0;
            --budget;
            y = mulmod_u64(y, y, n) + c;
            if (y >= n) y -= n;
        }
        uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            uint64_t lim = std::min(batch, r - k);
            for (uint64_t i = 0; i < lim; ++i) {
                if (budget == 0) return 0;
                --budget;
                y = mulmod_u64(y, y, n) + c;
                if (y >= n) y -= n;
                uint64_t diff = x > y ? x - y : y - x;
                q = mulmod_u64(q, diff, n);
            }
            g = std::gcd(q, n);
            k += lim;
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack one step at a time
        g = 1;
        while (g == 1) {
            if (budget == 0) return 0;
            --budget;
            ys = mulmod_u64(ys, ys, n) + c;
            if (ys >= n) ys -= n;
            uint64_t diff = x > ys ? x - ys : ys - x;
            g = std::gcd(diff ? diff : n, n);
        }
    }
    return (g == n) ? 0 : g;
}

mpz_class brent_rho_mpz(const mpz_class& n, unsigned long c, uint64_t& budget) {
    mpz_class y = 2, x, ys, q = 1, g = 1, diff;
    uint64_t r = 1;
    const uint64_t batch = 128;
    while (g == 1) {
        x = y;
        for (uint64_t i = 0; i < r; ++i) {
            if (budget == 0) return 0;
            --budget;
            y = (y * y + c) % n;
        }
        uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            uint64_t lim = std::min(batch, r - k);
            for (uint64_t i = 0; i < lim; ++i) {
                if (budget == 0) return 0;
                --budget;
                y = (y * y + c) % n;
                diff = abs(x - y);
                q = (q * diff) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
        }
        r *= 2;
    }
    if (g == n) {
        g = 1;
        while (g == 1) {
            if (budget == 0) return 0;
            --budget;
            ys = (ys * ys + c) % n;
            diff = x - ys;
            mpz_class ad = abs(diff);
            if (ad == 0) return 0;
            mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
        }
    }
    return (g == n) ? 0 : g;
}

mpz_class rho_split(const mpz_class& n, uint64_t& budget) {
    // deterministic c sequence seeded by n itself
    unsigned long c0 = 1 + (seed_from(n) % 997);
    for (int attempt = 0; attempt < 64 && budget > 0; ++attempt) {
        unsigned long c = c0 + 2ul * attempt;
        mpz_class f;
        if (mpz_fits_ulong_p(n.get_mpz_t())) {
            uint64_t f64 = brent_rho_u64(mpz_get_ui(n.get_mpz_t()), c, budget);
            f = mpz_class(static_cast<unsigned long>(f64));
        } else {
            f = brent_rho_mpz(n, c, budget);
        }
        if (f > 1 && f < n) return f;
    }
    return 0;
}

// If n = m^k for k >= 2 returns (m, k), else k = 1.
std::pair<mpz_class, unsigned> perfect_power_root(const mpz_class& n) {
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        unsigned maxk = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
        for (unsigned k = 2; k <= maxk; ++k) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return {root, k};
        }
    }
    return {n, 1};
}

void add_factor(std::vector<std::pair<mpz_class, unsigned>>& fs, const mpz_class& p, unsigned e) {
    for (auto& [q, f] : fs) {
        if (q == p) {
            f += e;
            return;
        }
    }
    fs.emplace_back(p, e);
}

}  // namespace

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t limit = 1'000'000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            ps.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i) sieve[j] = false;
        }
        return ps;
    }();
    return primes;
}

mpz_class FactoredInteger::reconstruct() const {
    mpz_class v = cofactor;
    for (const auto& [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    for (uint32_t b : kFixedBases) {
        if (!miller_rabin_round(n, b, d, s)) return false;
    }
    if (n < deterministic_mr_limit()) return true;

    // beyond the proven range: extra rounds, bases seeded from n for repeatability
    std::mt19937_64 rng(seed_from(n));
    for (int round = 0; round < 40; ++round) {
        mpz_class base = 0;
        for (int w = 0; w < 4; ++w) {
            base <<= 64;
            base += mpz_class(static_cast<unsigned long>(rng()));
        }
        base = base % (n - 3) + 2;
        if (!miller_rabin_round(n, base, d, s)) return false;
    }
    return true;
}

FactoredInteger factorize(const mpz_class& n, const Budget& budget) {
    if (n < 1) throw PreconditionViolation("factorize: n must be >= 1");
    FactoredInteger out;
    out.value = n;
    if (n == 1) return out;

    mpz_class rem = n;

    // Stage 1: strip small primes. The full trial range [1e4, trial_bound]
    // is only swept later, for pieces rho fails on; rho finds factors of
    // that size almost immediately, so the eager sweep would be waste.
    const uint64_t eager_bound = std::min<uint64_t>(10'000, budget.trial_bound);
    for (uint32_t p : small_primes()) {
        if (p > eager_bound) break;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rem.get_mpz_t(), p));
            add_factor(out.factors, p, e);
        }
        if (rem == 1) break;
        if (mpz_fits_ulong_p(rem.get_mpz_t())) {
            // past sqrt(rem) the remainder is prime; stage 2 settles it
            uint64_t r = mpz_get_ui(rem.get_mpz_t());
            if (static_cast<uint64_t>(p) * p > r) break;
        }
    }

    // Stage 2: recursive rho splitting under the shared budget.
    uint64_t rho_budget = budget.rho_iterations;
    std::deque<std::pair<mpz_class, unsigned>> queue;  // (piece, multiplicity)
    if (rem != 1) queue.emplace_back(rem, 1);

    std::vector<std::pair<mpz_class, unsigned>> unresolved;  // composite or unproven
    while (!queue.empty()) {
        auto [piece, mult] = queue.front();
        queue.pop_front();
        if (piece == 1) continue;
        if (is_probable_prime(piece)) {
            if (piece < deterministic_mr_limit()) {
                add_factor(out.factors, piece, mult);
            } else {
                unresolved.emplace_back(piece, mult);  // probable but unproven
            }
            continue;
        }
        auto [root, k] = perfect_power_root(piece);
        if (k > 1) {
            queue.emplace_back(root, mult * k);
            continue;
        }
        mpz_class f = rho_split(piece, rho_budget);
        if (f == 0) {
            // rho exhausted: one deterministic sweep of the remaining trial range
            bool found = false;
            for (uint32_t p : small_primes()) {
                if (p <= eager_bound) continue;
                if (p > budget.trial_bound) break;
                if (mpz_divisible_ui_p(piece.get_mpz_t(), p)) {
                    unsigned e = 0;
                    do {
                        mpz_divexact_ui(piece.get_mpz_t(), piece.get_mpz_t(), p);
                        ++e;
                    } while (mpz_divisible_ui_p(piece.get_mpz_t(), p));
                    add_factor(out.factors, p, e * mult);
                    found = true;
                }
            }
            if (found && piece != 1) {
                queue.emplace_back(piece, mult);
            } else if (piece != 1) {
                unresolved.emplace_back(piece, mult);
            }
            continue;
        }
        unsigned e = 0;
        mpz_class rest = piece;
        do {
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), f.get_mpz_t());
            ++e;
        } while (mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t()));
        queue.emplace_back(f, mult * e);
        if (rest != 1) queue.emplace_back(rest, mult);
    }

    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    if (unresolved.empty()) {
        out.cofactor = 1;
        out.cofactor_status = CofactorStatus::unit;
    } else if (unresolved.size() == 1 && unresolved[0].second == 1 &&
               is_probable_prime(unresolved[0].first)) {
        out.cofactor = unresolved[0].first;
        out.cofactor_status = CofactorStatus::probable_prime;
    } else {
        out.cofactor = 1;
        for (const auto& [piece, mult] : unresolved) {
            mpz_class pm;
            mpz_pow_ui(pm.get_mpz_t(), piece.get_mpz_t(), mult);
            out.cofactor *= pm;
        }
        out.cofactor_status = CofactorStatus::composite_unknown;
    }
    return out;
}

std::pair<mpz_class, bool> largest_known_prime_factor(const FactoredInteger& f) {
    mpz_class best = 1;
    if (!f.factors.empty()) best = f.factors.back().first;
    if (f.cofactor_status == CofactorStatus::probable_prime && f.cofactor > best)
        best = f.cofactor;
    return {best, f.complete()};
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
    if (n < 1) throw PreconditionViolation("valuation: n must be >= 1");
    if (p < 2) throw PreconditionViolation("valuation: p must be >= 2");
    mpz_class scratch;
    return static_cast<unsigned>(
        mpz_remove(scratch.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace ellseq
