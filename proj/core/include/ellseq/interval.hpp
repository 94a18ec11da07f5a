#pragma once

#include <mpfr.h>

#include <gmpxx.h>

namespace ellseq {

/// Directed-rounding interval [lo, hi] at a fixed working precision.
/// Every operation rounds lo down and hi up, so the result encloses the
/// exact value; comparisons below are certified, never heuristic.
class Interval {
  public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval exact(const mpz_class& v, mpfr_prec_t prec);
    static Interval exact(long v, mpfr_prec_t prec);
    static Interval exact_double(double v, mpfr_prec_t prec);
    /// num/den as a tight interval; den > 0.
    static Interval ratio(const mpz_class& num, const mpz_class& den, mpfr_prec_t prec);

    Interval operator+(const Interval& rhs) const;
    Interval operator-(const Interval& rhs) const;
    Interval operator*(const Interval& rhs) const;
    Interval operator/(const Interval& rhs) const;  // rhs must not contain 0

    Interval log() const;  // requires lo > 0
    Interval abs() const;
    Interval pow_ui(unsigned long e) const;  // requires lo >= 0

    double mid() const;
    double lo_d() const;
    double hi_d() const;
    mpfr_prec_t prec() const { return prec_; }

    bool contains_zero() const;
    bool positive() const;  // lo > 0

    /// Certified: every point of *this is <= every point of rhs.
    bool surely_le(const Interval& rhs) const;
    /// Certified: every point of *this is > every point of rhs.
    bool surely_gt(const Interval& rhs) const;

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;

    friend class IntervalOps;
};

enum class Cert { holds, fails, undecided };

/// Certified a <= b: holds / fails / undecided (intervals overlap).
Cert certify_le(const Interval& a, const Interval& b);
/// Certified a >= b.
Cert certify_ge(const Interval& a, const Interval& b);
/// Certified |a| <= bound.
Cert certify_abs_le(const Interval& a, const Interval& bound);

}  // namespace ellseq
