#include "ellseq/primitive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ellseq/arith.hpp"
#include "ellseq/errors.hpp"
#include "ellseq/sequence.hpp"

namespace ellseq {

namespace {

// Residues of N_1..N_n mod p via the trace recurrence mod p.
std::vector<mpz_class> order_residues(const FrobeniusParams& params, const mpz_class& p,
                                      uint32_t n_max) {
    std::vector<mpz_class> out(n_max + 1);
    mpz_class t0 = 2 % p, t1 = params.a % p, qp = params.q % p, ap = params.a % p;
    if (t1 < 0) t1 += p;
    if (qp < 0) qp += p;
    if (ap < 0) ap += p;
    mpz_class qpow = 1;
    out[0] = 0;
    for (uint32_t k = 1; k <= n_max; ++k) {
        mpz_class tk;
        if (k == 1) {
            tk = t1;
        } else {
            tk = (ap * t1 - qp * t0) % p;
            if (tk < 0) tk += p;
            t0 = t1;
            t1 = tk;
        }
        qpow = (qpow * qp) % p;
        mpz_class nk = (qpow + 1 - tk) % p;
        if (nk < 0) nk += p;
        out[k] = nk;
    }
    return out;
}

// order of r in (Z/p)^* equals n? Checked via r^n = 1 and r^{n/l} != 1
// for every prime l | n; avoids factoring p - 1.
bool unit_order_is(const mpz_class& r, const mpz_class& p, uint32_t n) {
    if (r == 0) return false;
    mpz_class x, e;
    e = n;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (x != 1) return false;
    uint32_t m = n;
    for (uint32_t l = 2; static_cast<uint64_t>(l) * l <= m; ++l) {
        if (m % l == 0) {
            e = n / l;
            mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
            if (x == 1) return false;
            while (m % l == 0) m /= l;
        }
    }
    if (m > 1) {
        e = n / m;
        mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (x == 1) return false;
    }
    return true;
}

struct QuadMod {
    // arithmetic in (Z/p)[x] / (x^2 - a x + q)
    mpz_class p, a, q;

    std::pair<mpz_class, mpz_class> mul(const std::pair<mpz_class, mpz_class>& u,
                                        const std::pair<mpz_class, mpz_class>& v) const {
        mpz_class yy = (u.second * v.second) % p;
        mpz_class x = (u.first * v.first - q * yy) % p;
        mpz_class y = (u.first * v.second + u.second * v.first + a * yy) % p;
        if (x < 0) x += p;
        if (y < 0) y += p;
        return {x, y};
    }

    std::pair<mpz_class, mpz_class> pow(std::pair<mpz_class, mpz_class> b,
                                        mpz_class e) const {
        std::pair<mpz_class, mpz_class> r{1, 0};
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
            e >>= 1;
            if (e > 0) b = mul(b, b);
        }
        return r;
    }

    std::pair<mpz_class, mpz_class> inverse(const std::pair<mpz_class, mpz_class>& u) const {
        // u^{-1} = conj(u) / norm(u)
        mpz_class norm = (u.first * u.first + a * u.first * u.second +
                          q * u.second * u.second) % p;
        if (norm < 0) norm += p;
        mpz_class ninv;
        if (mpz_invert(ninv.get_mpz_t(), norm.get_mpz_t(), p.get_mpz_t()) == 0)
            throw PreconditionViolation("QuadMod::inverse: element is not a unit");
        mpz_class cx = (u.first + a * u.second) % p;
        mpz_class cy = (p - u.second % p) % p;
        if (cx < 0) cx += p;
        return {(cx * ninv) % p, (cy * ninv) % p};
    }
};

}  // namespace

const char* to_string(PrimeKind k) {
    switch (k) {
        case PrimeKind::split: return "split";
        case PrimeKind::inert: return "inert";
        case PrimeKind::ramified: return "ramified";
    }
    return "?";
}

const char* to_string(ParityBranch b) {
    switch (b) {
        case ParityBranch::odd_modulus: return "odd";
        case ParityBranch::p3mod4: return "p3mod4";
        case ParityBranch::p1mod4: return "p1mod4";
    }
    return "?";
}

PrimeClassification classify_prime(const FrobeniusParams& params, const mpz_class& p) {
    int k = kronecker(params.delta, p);
    PrimeKind kind = k == 0 ? PrimeKind::ramified : (k == 1 ? PrimeKind::split : PrimeKind::inert);
    return {p, kind};
}

std::optional<uint32_t> rank_of_apparition(const FrobeniusParams& params, const mpz_class& p,
                                           uint32_t n_max) {
    auto res = order_residues(params, p, n_max);
    for (uint32_t m = 1; m <= n_max; ++m) {
        if (res[m] == 0) return m;
    }
    return std::nullopt;
}

std::optional<mpz_class> sqrt_mod(const mpz_class& a_in, const mpz_class& p) {
    mpz_class a = a_in % p;
    if (a < 0) a += p;
    if (a == 0) return mpz_class(0);
    if (kronecker(a, p) != 1) return std::nullopt;
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
        mpz_class e = (p + 1) / 4, r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // Tonelli-Shanks
    mpz_class q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    mpz_class z = 2;
    while (kronecker(z, p) != -1) ++z;
    mpz_class m = s, c, t, r, e = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        mpz_class tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        mpz_class b = c, two = 1;
        unsigned long gap = mpz_get_ui(m.get_mpz_t()) - i - 1;
        for (unsigned long j = 0; j < gap; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return r;
}

bool has_primitive_field_prime(const FrobeniusParams& params, const mpz_class& p,
                               PrimeKind kind, uint32_t n) {
    if (kind != PrimeKind::split) {
        auto rank = rank_of_apparition(params, p, n);
        return rank && *rank == n;  // single prime above p: ranks coincide
    }
    if (p == 2) {
        // split 2 forces a odd, q even: roots of x^2 + x are 0 and 1,
        // so the unit root has order 1.
        return n == 1;
    }
    auto r = sqrt_mod(params.delta, p);
    if (!r) throw MismatchError("has_primitive_field_prime: split p without sqrt(delta)");
    mpz_class inv2;
    mpz_class two = 2;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
    for (int sign : {1, -1}) {
        mpz_class root = ((params.a + sign * *r) % p) * inv2 % p;
        if (root < 0) root += p;
        if (root == 0) continue;  // the prime above p where alpha = 0 never appears
        if (unit_order_is(root, p, n)) return true;
    }
    return false;
}

PsiFactorCache::PsiFactorCache(const FrobeniusParams& params, const Budget& budget)
    : params_(params), budget_(budget) {}

void PsiFactorCache::ensure(uint32_t d) {
    if (d == 0) throw PreconditionViolation("PsiFactorCache: d must be >= 1");
    if (psi_.size() <= d) {
        psi_.resize(d + 1);
        psi_ready_.resize(d + 1, 0);
        psi_factored_.resize(d + 1);
        factored_ready_.resize(d + 1, 0);
    }
    if (!psi_ready_[d]) {
        psi_[d] = cyclo_norm(params_, d);
        psi_ready_[d] = 1;
    }
}

const mpz_class& PsiFactorCache::psi(uint32_t d) {
    ensure(d);
    return psi_[d];
}

const FactoredInteger& PsiFactorCache::psi_factors(uint32_t d) {
    ensure(d);
    if (!factored_ready_[d]) {
        psi_factored_[d] = factorize(psi_[d], budget_);
        factored_ready_[d] = 1;
    }
    return psi_factored_[d];
}

FactoredInteger PsiFactorCache::merged_order(uint32_t n) {
    FactoredInteger merged;
    merged.value = group_order(params_, n);
    mpz_class check = 1;
    for (uint32_t d : index_divisors(n)) {
        check *= psi(d);
        const FactoredInteger& piece = psi_factors(d);
        for (const auto& [p, e] : piece.factors) {
            bool found = false;
            for (auto& [mp, me] : merged.factors) {
                if (mp == p) {
                    me += e;
                    found = true;
                    break;
                }
            }
            if (!found) merged.factors.emplace_back(p, e);
        }
        if (piece.cofactor != 1) {
            if (piece.cofactor_status == CofactorStatus::probable_prime &&
                merged.cofactor == 1) {
                merged.cofactor = piece.cofactor;
                merged.cofactor_status = CofactorStatus::probable_prime;
            } else {
                merged.cofactor *= piece.cofactor;
                merged.cofactor_status = CofactorStatus::composite_unknown;
            }
        }
    }
    if (check != merged.value)
        throw MismatchError("factor_group_order: prod Psi_d != N_n");
    std::sort(merged.factors.begin(), merged.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (merged.cofactor == 1) merged.cofactor_status = CofactorStatus::unit;
    return merged;
}

FactoredInteger factor_group_order(const FrobeniusParams& params, uint32_t n,
                                   const Budget& budget) {
    PsiFactorCache cache(params, budget);
    return cache.merged_order(n);
}

PrimitiveScan primitive_primes(const FrobeniusParams& params, uint32_t n, const Budget& budget) {
    PsiFactorCache cache(params, budget);
    return primitive_primes(cache, n);
}

PrimitiveScan primitive_primes(PsiFactorCache& cache, uint32_t n) {
    if (n < 1) throw PreconditionViolation("primitive_primes: n must be >= 1");
    const FrobeniusParams& params = cache.params();
    PrimitiveScan scan;
    scan.n = n;
    scan.order_factored = cache.merged_order(n);
    scan.psi = cache.psi(n);
    scan.complete = scan.order_factored.complete();

    const bool degenerate = gamma_is_degenerate(params);
    std::vector<std::pair<mpz_class, unsigned>> known = scan.order_factored.factors;
    if (scan.order_factored.cofactor_status == CofactorStatus::probable_prime)
        known.emplace_back(scan.order_factored.cofactor, 1);

    for (const auto& [p, e] : known) {
        ValuationRecord rec;
        rec.p = p;
        rec.n = n;
        rec.nu_Nn = e;
        rec.nu_Psi_n = valuation(scan.psi, p);
        rec.rank = rank_of_apparition(params, p, n);
        rec.primitive = rec.rank && *rec.rank == n;
        rec.kind = classify_prime(params, p).kind;
        rec.k_primitive = has_primitive_field_prime(params, p, rec.kind, n);
        // inert p never divides q or delta; only p = 2 needs excluding
        if (rec.kind == PrimeKind::inert && !degenerate && p != 2) {
            // least divisor m of n with p | w_m; exists because p | N_n
            for (uint32_t m : index_divisors(n)) {
                mpz_class w = power_discriminant(params, m);
                if (w != 0 && mpz_divisible_p(w.get_mpz_t(), p.get_mpz_t())) {
                    rec.gamma_rank = m;
                    break;
                }
            }
        }
        if (rec.primitive) {
            scan.primitive.push_back(rec);
        } else {
            scan.nonprimitive.push_back(rec);
        }
    }
    return scan;
}

CongruenceVerdict check_congruence(const FrobeniusParams& params, const ValuationRecord& rec) {
    if (!rec.primitive)
        throw PreconditionViolation("check_congruence: record is not primitive");
    if (rec.n < 3) throw PreconditionViolation("check_congruence: requires n >= 3");
    CongruenceVerdict verdict;
    if (rec.kind == PrimeKind::ramified) {
        verdict.status = CongruenceStatus::skipped_ramified;
        verdict.note = "ramified prime: excluded from the congruence statement";
        return verdict;
    }

    const mpz_class n(rec.n);
    mpz_class norm = rec.p;
    if (rec.kind == PrimeKind::inert) norm = rec.p * rec.p;
    if (norm % n != 1)
        throw CongruenceViolation("norm congruence failed: N(pr) != 1 mod n for p = " +
                                  rec.p.get_str() + ", n = " + std::to_string(rec.n));
    verdict.norm_congruence = true;
    if (norm < n + 1)
        throw CongruenceViolation("norm bound failed: N(pr) < n + 1");
    verdict.norm_at_least_n_plus_1 = true;

    if (rec.kind == PrimeKind::split) {
        if (rec.p % n != 1)
            throw CongruenceViolation("split congruence failed: p != 1 mod n for p = " +
                                      rec.p.get_str());
        verdict.signed_modulus = rec.n;
        return verdict;
    }

    // inert: the signed congruence is a statement about the gamma-sequence
    // rank; it reads mod n exactly when gamma_rank = n.
    if (rec.gamma_rank) {
        mpz_class m(*rec.gamma_rank);
        mpz_class r = rec.p % m;
        if ((r + 1) % m != 0)
            throw CongruenceViolation("inert congruence failed: p != -1 mod gamma_rank for p = " +
                                      rec.p.get_str());
        verdict.signed_modulus = *rec.gamma_rank;
        if (*rec.gamma_rank != rec.n)
            verdict.note = "gamma rank " + std::to_string(*rec.gamma_rank) +
                           " < n: only p^2 = 1 mod n holds at level n";
    } else {
        verdict.note = "signed congruence skipped (gamma degenerate or p | 2q)";
    }
    return verdict;
}

NonprimitiveCheck nonprimitive_valuation_check(const FrobeniusParams& params, uint32_t n,
                                               const Budget& budget) {
    if (n < 8)
        throw PreconditionViolation("nonprimitive_valuation_check: requires n >= 8");
    NonprimitiveCheck out;
    mpz_class psi = cyclo_norm(params, n);
    FactoredInteger f = factorize(psi, budget);
    out.complete = f.complete();
    std::vector<std::pair<mpz_class, unsigned>> known = f.factors;
    if (f.cofactor_status == CofactorStatus::probable_prime)
        known.emplace_back(f.cofactor, valuation(psi, f.cofactor));
    for (const auto& [p, e] : known) {
        PrimeKind kind = classify_prime(params, p).kind;
        if (has_primitive_field_prime(params, p, kind, n)) continue;
        NonprimitiveCheck::Entry entry;
        entry.p = p;
        entry.nu_psi = valuation(psi, p);
        entry.bound = 2 * valuation(mpz_class(n), p);
        entry.ok = entry.nu_psi <= entry.bound;
        if (!entry.ok) out.all_ok = false;
        out.checked.push_back(entry);
    }
    return out;
}

unsigned gamma_valuation(const FrobeniusParams& params, const mpz_class& p, uint32_t n) {
    if (n < 1) throw PreconditionViolation("gamma_valuation: n must be >= 1");
    if (gamma_is_degenerate(params))
        throw PreconditionViolation("gamma_valuation: gamma is a root of unity");
    PrimeKind kind = classify_prime(params, p).kind;
    if (kind != PrimeKind::inert)
        throw PreconditionViolation("gamma_valuation: p must be inert");
    mpz_class two_q_delta = 2 * params.q * params.delta;
    if (mpz_divisible_p(two_q_delta.get_mpz_t(), p.get_mpz_t()))
        throw PreconditionViolation("gamma_valuation: p must not divide 2 q delta");
    mpz_class w = power_discriminant(params, n);
    if (w == 0) throw MismatchError("gamma_valuation: w_n = 0 with nondegenerate gamma");
    unsigned e = valuation(abs(w), p);
    if (e % 2 != 0)
        throw MismatchError("gamma_valuation: nu_p(w_n) odd for inert p away from delta");
    return e / 2;
}

std::optional<uint32_t> gamma_rank_scan(const FrobeniusParams& params, const mpz_class& p,
                                        uint32_t m_max) {
    for (uint32_t m = 1; m <= m_max; ++m) {
        mpz_class w = power_discriminant(params, m);
        if (w != 0 && mpz_divisible_p(w.get_mpz_t(), p.get_mpz_t())) return m;
    }
    return std::nullopt;
}

uint32_t gamma_order_oracle(const FrobeniusParams& params, const mpz_class& p,
                            const Budget& budget) {
    if (gamma_is_degenerate(params))
        throw PreconditionViolation("gamma_order_oracle: gamma is a root of unity");
    if (classify_prime(params, p).kind != PrimeKind::inert)
        throw PreconditionViolation("gamma_order_oracle: p must be inert");
    mpz_class two_q_delta = 2 * params.q * params.delta;
    if (mpz_divisible_p(two_q_delta.get_mpz_t(), p.get_mpz_t()))
        throw PreconditionViolation("gamma_order_oracle: p must not divide 2 q delta");

    QuadMod F{p, params.a % p, params.q % p};
    if (F.a < 0) F.a += p;
    if (F.q < 0) F.q += p;
    std::pair<mpz_class, mpz_class> alpha{0, 1};
    std::pair<mpz_class, mpz_class> abar{F.a, p - 1};  // a - alpha
    auto gamma = F.mul(abar, F.inverse(alpha));

    // norm(gamma) = 1, so ord(gamma) | p + 1
    mpz_class group = p + 1;
    FactoredInteger gf = factorize(group, budget);
    if (!gf.complete())
        throw FactorizationExceeded("gamma_order_oracle: cannot factor p + 1 within budget");
    auto factors = gf.factors;
    if (gf.cofactor_status == CofactorStatus::probable_prime) factors.emplace_back(gf.cofactor, 1);

    mpz_class e = group;
    for (const auto& [r, mult] : factors) {
        for (unsigned i = 0; i < mult; ++i) {
            mpz_class trial = e / r;
            auto g = F.pow(gamma, trial);
            if (g.first == 1 && g.second == 0) {
                e = trial;
            } else {
                break;
            }
        }
    }
    auto check = F.pow(gamma, e);
    if (!(check.first == 1 && check.second == 0))
        throw MismatchError("gamma_order_oracle: order computation failed");
    if (!mpz_fits_ulong_p(e.get_mpz_t()))
        throw MismatchError("gamma_order_oracle: order does not fit a machine word");
    return static_cast<uint32_t>(mpz_get_ui(e.get_mpz_t()));
}

CrtClass crt_class(uint32_t n, uint32_t d, std::optional<ParityBranch> branch) {
    if (n < 1) throw PreconditionViolation("crt_class: n must be >= 1");
    CrtClass out;
    out.n = n;
    out.d = d;
    const bool even = (n % 2 == 0);
    out.modulus = even ? n / 2 : n;

    if (!even) {
        if (branch && *branch != ParityBranch::odd_modulus)
            throw PreconditionViolation("crt_class: odd n takes the odd branch");
        out.branch = ParityBranch::odd_modulus;
    } else {
        if (branch) {
            out.branch = *branch;
            if (*branch == ParityBranch::odd_modulus)
                throw PreconditionViolation("crt_class: even n needs a parity branch");
            if (*branch == ParityBranch::p3mod4 && d % 2 == 0)
                throw PreconditionViolation("crt_class: p3mod4 branch requires odd d");
            if (*branch == ParityBranch::p1mod4 && out.modulus % d == 0 &&
                (out.modulus / d) % 2 == 0)
                throw PreconditionViolation("crt_class: p1mod4 branch requires odd modulus/d");
        } else {
            out.branch = (d % 2 == 1) ? ParityBranch::p3mod4 : ParityBranch::p1mod4;
        }
    }

    uint32_t M = out.modulus;
    if (M == 0 || d == 0 || M % d != 0)
        throw NotUnitary("crt_class: d must divide the modulus");
    uint32_t e = M / d;
    if (std::gcd(d, e) != 1)
        throw NotUnitary("crt_class: d is not a unitary divisor of the modulus");

    if (M == 1) {
        out.residue = 0;  // degenerate: everything is congruent mod 1
        return out;
    }
    // x = 1 mod d, x = -1 mod e, unique mod M = d e
    mpz_class md(d), me(e), inv;
    mpz_class x;
    if (d == 1) {
        x = me - 1;
    } else if (e == 1) {
        x = 1;
    } else {
        // x = -1 + e * t with e t = 2 mod d
        mpz_invert(inv.get_mpz_t(), me.get_mpz_t(), md.get_mpz_t());
        mpz_class t = (2 * inv) % md;
        x = (me * t - 1) % mpz_class(M);
        if (x < 0) x += M;
    }
    out.residue = x;
    return out;
}

DivisorCensus small_divisor_census(const mpz_class& n, const Budget& budget) {
    if (n < 16) throw PreconditionViolation("small_divisor_census: requires n >= 16");
    ArithProfile pr = profile(n, budget);
    DivisorCensus out;
    double logn = std::log(mpz_get_d(n.get_mpz_t()));
    out.cutoff = static_cast<double>(pr.tau) * logn;
    if (!pr.divisors.empty()) {
        for (const auto& dv : pr.divisors) {
            if (mpz_get_d(dv.get_mpz_t()) < out.cutoff) ++out.count;
        }
    } else {
        for_each_divisor(pr.factors, [&](const mpz_class& dv) {
            if (mpz_get_d(dv.get_mpz_t()) < out.cutoff) ++out.count;
        });
    }
    double ll = std::log(logn);
    double lll = std::log(ll);
    out.bound = std::exp(70.0 * logn * lll / (ll * ll));
    out.count_le_bound = static_cast<double>(out.count) <= out.bound;
    return out;
}

}  // namespace ellseq
