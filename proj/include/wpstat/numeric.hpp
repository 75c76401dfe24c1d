#pragma once

// Arbitrary-precision scalar types shared by the whole library:
//   Rational  -- exact rational over GMP
//   BigFloat  -- MPFR float whose working precision is set at runtime
//   Integer   -- GMP integer, used for exact combinatorics

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace wpstat {

namespace mp = boost::multiprecision;

using Integer  = mp::mpz_int;
using Rational = mp::mpq_rational;
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// Errors surfaced to the CLI with dedicated exit codes.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Values are computed with `guard_digits` extra decimal digits beyond the
// requested output precision, so that a result printed at p digits meets the
// 10^(1-p) relative-error contract.
inline constexpr unsigned kGuardDigits = 10;
inline constexpr unsigned kMinPrecision = 10;

// Scoped working precision (decimal digits, guard included).  New BigFloat
// variables created while the guard is alive use this precision.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned digits10)
        : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits10);
    }
    ~ScopedPrecision() { BigFloat::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

inline void require_precision(unsigned digits10) {
    if (digits10 < kMinPrecision)
        throw DomainError("precision must be at least 10 digits");
}

// pi at the current working precision.
inline BigFloat const_pi() {
    BigFloat x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

inline BigFloat to_bigfloat(const Rational& q) { return BigFloat(q); }

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// Product n_lo * (n_lo+1) * ... * n_hi as an exact integer (1 when empty).
inline Integer range_product(long long n_lo, long long n_hi) {
    Integer r = 1;
    for (long long v = n_lo; v <= n_hi; ++v) r *= v;
    return r;
}

// Bernoulli numbers B_n in the B_1 = -1/2 convention, via the classical
// recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0.
Rational bernoulli(unsigned n);

}  // namespace wpstat
