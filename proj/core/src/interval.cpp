#include "ellseq/interval.hpp"

#include <algorithm>

#include "ellseq/errors.hpp"

namespace ellseq {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_nan(lo_);
    mpfr_set_nan(hi_);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::exact(const mpz_class& v, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_z(out.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi_, v.get_mpz_t(), MPFR_RNDU);
    return out;
}

Interval Interval::exact(long v, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_si(out.lo_, v, MPFR_RNDD);
    mpfr_set_si(out.hi_, v, MPFR_RNDU);
    return out;
}

Interval Interval::exact_double(double v, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_d(out.lo_, v, MPFR_RNDD);
    mpfr_set_d(out.hi_, v, MPFR_RNDU);
    return out;
}

Interval Interval::ratio(const mpz_class& num, const mpz_class& den, mpfr_prec_t prec) {
    if (den <= 0) throw PreconditionViolation("Interval::ratio: den must be > 0");
    Interval n = exact(num, prec);
    Interval d = exact(den, prec);
    return n / d;
}

Interval Interval::operator+(const Interval& rhs) const {
    Interval out(std::max(prec_, rhs.prec_));
    mpfr_add(out.lo_, lo_, rhs.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, hi_, rhs.hi_, MPFR_RNDU);
    return out;
}

Interval Interval::operator-(const Interval& rhs) const {
    Interval out(std::max(prec_, rhs.prec_));
    mpfr_sub(out.lo_, lo_, rhs.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, hi_, rhs.lo_, MPFR_RNDU);
    return out;
}

Interval Interval::operator*(const Interval& rhs) const {
    Interval out(std::max(prec_, rhs.prec_));
    mpfr_t t;
    mpfr_init2(t, out.prec_);

    const mpfr_t* as[2] = {&lo_, &hi_};
    const mpfr_t* bs[2] = {&rhs.lo_, &rhs.hi_};
    bool first = true;
    for (auto a : as) {
        for (auto b : bs) {
            mpfr_mul(t, *a, *b, MPFR_RNDD);
            if (first || mpfr_cmp(t, out.lo_) < 0) mpfr_set(out.lo_, t, MPFR_RNDD);
            mpfr_mul(t, *a, *b, MPFR_RNDU);
            if (first || mpfr_cmp(t, out.hi_) > 0) mpfr_set(out.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return out;
}

Interval Interval::operator/(const Interval& rhs) const {
    if (rhs.contains_zero()) throw DomainError("Interval: division by interval containing 0");
    Interval out(std::max(prec_, rhs.prec_));
    mpfr_t t;
    mpfr_init2(t, out.prec_);

    const mpfr_t* as[2] = {&lo_, &hi_};
    const mpfr_t* bs[2] = {&rhs.lo_, &rhs.hi_};
    bool first = true;
    for (auto a : as) {
        for (auto b : bs) {
            mpfr_div(t, *a, *b, MPFR_RNDD);
            if (first || mpfr_cmp(t, out.lo_) < 0) mpfr_set(out.lo_, t, MPFR_RNDD);
            mpfr_div(t, *a, *b, MPFR_RNDU);
            if (first || mpfr_cmp(t, out.hi_) > 0) mpfr_set(out.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return out;
}

Interval Interval::log() const {
    if (!positive()) throw DomainError("Interval::log: requires lo > 0");
    Interval out(prec_);
    mpfr_log(out.lo_, lo_, MPFR_RNDD);
    mpfr_log(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::abs() const {
    Interval out(prec_);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_set(out.lo_, lo_, MPFR_RNDD);
        mpfr_set(out.hi_, hi_, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_neg(out.lo_, hi_, MPFR_RNDD);
        mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(out.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_neg(t, lo_, MPFR_RNDU);
        if (mpfr_cmp(t, hi_) > 0) {
            mpfr_set(out.hi_, t, MPFR_RNDU);
        } else {
            mpfr_set(out.hi_, hi_, MPFR_RNDU);
        }
        mpfr_clear(t);
    }
    return out;
}

Interval Interval::pow_ui(unsigned long e) const {
    if (mpfr_sgn(lo_) < 0) throw DomainError("Interval::pow_ui: requires lo >= 0");
    Interval out(prec_);
    mpfr_pow_ui(out.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_ui(out.hi_, hi_, e, MPFR_RNDU);
    return out;
}

double Interval::mid() const {
    return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }

bool Interval::surely_le(const Interval& rhs) const { return mpfr_cmp(hi_, rhs.lo_) <= 0; }

bool Interval::surely_gt(const Interval& rhs) const { return mpfr_cmp(lo_, rhs.hi_) > 0; }

Cert certify_le(const Interval& a, const Interval& b) {
    if (a.surely_le(b)) return Cert::holds;
    if (a.surely_gt(b)) return Cert::fails;
    return Cert::undecided;
}

Cert certify_ge(const Interval& a, const Interval& b) {
    Cert c = certify_le(b, a);
    return c;
}

Cert certify_abs_le(const Interval& a, const Interval& bound) {
    return certify_le(a.abs(), bound);
}

}  // namespace ellseq
