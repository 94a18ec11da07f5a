#include "ellseq/sunit.hpp"

#include <algorithm>
#include <cmath>

#include "ellseq/errors.hpp"

namespace ellseq {

namespace {

constexpr double kEnumerationGuard = 1e9;

void validate(const SUnitInstance& inst) {
    if (inst.x < 0 || !std::isfinite(inst.x))
        throw PreconditionViolation("theta: x must be finite and >= 0");
    for (size_t i = 0; i < inst.primes.size(); ++i) {
        if (inst.primes[i] < 2) throw PreconditionViolation("theta: set members must be >= 2");
        if (i > 0 && inst.primes[i] <= inst.primes[i - 1])
            throw PreconditionViolation("theta: primes must be distinct ascending");
    }
}

void guard_enumeration(const SUnitInstance& inst) {
    // The count never exceeds floor(x); past the guard size the trivial
    // bound exp(2k loglog x) has to certify the enumeration instead.
    if (inst.x <= kEnumerationGuard) return;
    double cap = 2.0 * static_cast<double>(inst.k()) * std::log(std::log(inst.x));
    if (cap > std::log(kEnumerationGuard))
        throw EnumerationTooLarge("theta_exact: trivial bound exceeds enumeration guard");
}

template <typename Visit>
void enumerate_u64(uint64_t limit, const std::vector<uint64_t>& primes, Visit&& visit) {
    // lexicographic DFS over exponent vectors, pruned by the running product
    std::vector<uint64_t> stack;
    auto rec = [&](auto&& self, size_t i, uint64_t prod) -> void {
        if (i == primes.size()) {
            visit(prod);
            return;
        }
        uint64_t cur = prod;
        while (true) {
            self(self, i + 1, cur);
            if (cur > limit / primes[i]) break;
            cur *= primes[i];
        }
    };
    rec(rec, 0, 1);
}

void enumerate_mpz(const mpz_class& limit, const std::vector<uint64_t>& primes, uint64_t& count) {
    auto rec = [&](auto&& self, size_t i, const mpz_class& prod) -> void {
        if (i == primes.size()) {
            ++count;
            return;
        }
        mpz_class cur = prod;
        while (true) {
            self(self, i + 1, cur);
            cur *= primes[i];
            if (cur > limit) break;
        }
    };
    rec(rec, 0, 1);
}

}  // namespace

double log_star(double t) {
    if (t <= 0) return 1.0;
    return std::max(std::log(t), 1.0);
}

uint64_t theta_exact(const SUnitInstance& inst) {
    validate(inst);
    if (inst.x < 1) return 0;
    guard_enumeration(inst);
    uint64_t count = 0;
    if (inst.x < 9.0e18) {
        uint64_t limit = static_cast<uint64_t>(std::floor(inst.x));
        enumerate_u64(limit, inst.primes, [&](uint64_t) { ++count; });
    } else {
        mpz_class limit(std::floor(inst.x));
        enumerate_mpz(limit, inst.primes, count);
    }
    return count;
}

std::vector<uint64_t> theta_enumerate(const SUnitInstance& inst) {
    validate(inst);
    std::vector<uint64_t> values;
    if (inst.x < 1) return values;
    if (inst.x >= 9.0e18)
        throw EnumerationTooLarge("theta_enumerate: x too large to materialize values");
    guard_enumeration(inst);
    uint64_t limit = static_cast<uint64_t>(std::floor(inst.x));
    enumerate_u64(limit, inst.primes, [&](uint64_t v) { values.push_back(v); });
    std::sort(values.begin(), values.end());
    return values;
}

double theta_bound(const SUnitInstance& inst, ThetaVariant variant) {
    validate(inst);
    const double x = inst.x;
    const double k = static_cast<double>(inst.k());

    switch (variant) {
        case ThetaVariant::trivial: {
            if (x < 7) throw PreconditionViolation("theta_bound(trivial): requires x >= 7");
            return std::exp(2.0 * k * std::log(std::log(x)));
        }
        case ThetaVariant::large_primes: {
            if (x < 3) throw PreconditionViolation("theta_bound(large_primes): requires x >= 3");
            for (uint64_t p : inst.primes) {
                if (static_cast<double>(p) * static_cast<double>(p) < k)
                    throw PreconditionViolation(
                        "theta_bound(large_primes): requires p >= sqrt(k) for all p in S");
            }
            double t = 10.0 * (std::log(x) / log_star(k)) *
                       log_star(k * log_star(k) / std::log(x));
            return std::exp(t);
        }
        case ThetaVariant::general: {
            if (x < 3) throw PreconditionViolation("theta_bound(general): requires x >= 3");
            double t = 2.0 * std::sqrt(k) * std::log(std::log(x)) +
                       20.0 * (std::log(x) / log_star(k)) *
                           log_star(k * log_star(k) / std::log(x));
            return std::exp(t);
        }
    }
    throw PreconditionViolation("theta_bound: unknown variant");
}

CompositionCount count_bounded_compositions(unsigned k, unsigned ell) {
    if (k < 1) throw PreconditionViolation("count_bounded_compositions: k must be >= 1");
    CompositionCount out;
    mpz_bin_uiui(out.exact.get_mpz_t(), k + ell, ell);
    out.series = 0;
    for (unsigned i = 0; i <= ell; ++i) {
        mpz_class term;
        mpz_bin_uiui(term.get_mpz_t(), k + i, i);
        out.series += term;
    }
    if (out.exact > out.series)
        throw MismatchError("count_bounded_compositions: exact count exceeds series bound");
    return out;
}

}  // namespace ellseq
