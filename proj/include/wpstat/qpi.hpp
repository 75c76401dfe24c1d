#pragma once

// QPiNumber: exact elements of Q[pi], stored as a finite sum of terms
// q_k * pi^k with nonzero rational q_k and nonnegative integer exponent k.
// This ring carries every coefficient of the volume polynomials exactly.

#include "wpstat/numeric.hpp"

#include <map>
#include <string>

namespace wpstat {

class QPiNumber {
public:
    QPiNumber() = default;
    QPiNumber(long v) { add_term(0, Rational(v)); }           // NOLINT(google-explicit-constructor)
    QPiNumber(const Rational& q) { add_term(0, q); }          // NOLINT(google-explicit-constructor)
    QPiNumber(const Rational& q, unsigned pi_exp) { add_term(pi_exp, q); }

    static QPiNumber pi_power(unsigned k) { return QPiNumber(Rational(1), k); }

    const std::map<unsigned, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // All stored rationals positive (vacuously true for zero).
    bool is_positive() const;
    // Single term q * pi^k with q > 0 and k == expected_exp, or zero.
    bool is_positive_multiple_of_pi_power(unsigned expected_exp) const;

    QPiNumber& operator+=(const QPiNumber& o);
    QPiNumber& operator-=(const QPiNumber& o);
    QPiNumber& operator*=(const QPiNumber& o);
    QPiNumber operator-() const;

    friend QPiNumber operator+(QPiNumber a, const QPiNumber& b) { return a += b; }
    friend QPiNumber operator-(QPiNumber a, const QPiNumber& b) { return a -= b; }
    friend QPiNumber operator*(QPiNumber a, const QPiNumber& b) { return a *= b; }
    friend bool operator==(const QPiNumber& a, const QPiNumber& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const QPiNumber& a, const QPiNumber& b) { return !(a == b); }

    QPiNumber& mul_rational(const Rational& q);
    // Multiply by pi^k (shifts every exponent).
    QPiNumber& mul_pi_power(unsigned k);

    // Numeric value at `precision` output digits; pi and the accumulation are
    // carried with kGuardDigits extra digits.
    BigFloat eval(unsigned precision) const;
    // Value at the current working precision (used internally by evaluators
    // that already hold a ScopedPrecision).
    BigFloat eval_here() const;

    // Text form "num/den*pi^k" joined by "+", exponents ascending; "0" when
    // empty.  parse() accepts exactly this grammar.
    std::string to_string() const;
    static QPiNumber parse(const std::string& text);

private:
    void add_term(unsigned k, const Rational& q);
    std::map<unsigned, Rational> terms_;
};

// zeta(2i) as an exact multiple of pi^(2i); requires i >= 1.
QPiNumber zeta_even(unsigned i);

}  // namespace wpstat
