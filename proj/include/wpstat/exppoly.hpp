#pragma once

// Small symbolic algebra for integrands of the form
//     sum  c * L^p * prod_i x_i^{e_i} * exp(lam*L + sum_i mu_i*x_i)
// with c in Q[pi] and rational exponents lam, mu_i.  Closed under iterated
// integration of one variable over [0, a*L + sum_j b_j*x_j], which is what
// the simplex/box integrals of polynomial-times-exponential integrands need.
// No quadrature anywhere.

#include "wpstat/qpi.hpp"

#include <compare>
#include <map>
#include <vector>

namespace wpstat {

class ExpPoly {
public:
    struct Key {
        Rational lam;                 // coefficient of L in the exponent
        unsigned p = 0;               // power of L
        std::vector<Rational> mu;     // per-variable exponential coefficients
        std::vector<unsigned> e;      // per-variable powers
        bool operator<(const Key& o) const {
            if (lam != o.lam) return lam < o.lam;
            if (p != o.p) return p < o.p;
            if (mu != o.mu) return mu < o.mu;
            return e < o.e;
        }
        bool operator==(const Key& o) const = default;
    };

    explicit ExpPoly(unsigned nvars = 0) : nvars_(nvars) {}

    unsigned nvars() const { return nvars_; }
    const std::map<Key, QPiNumber>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    static ExpPoly constant(unsigned nvars, QPiNumber c);
    // c * L^p * exp(lam*L)
    static ExpPoly l_term(unsigned nvars, QPiNumber c, const Rational& lam, unsigned p);
    // c * x_var^power
    static ExpPoly monomial(unsigned nvars, unsigned var, unsigned power, QPiNumber c);
    // exp(mu * x_var)
    static ExpPoly exponential(unsigned nvars, unsigned var, const Rational& mu);

    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator*=(const ExpPoly& o);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator*(ExpPoly a, const ExpPoly& b) { return a *= b; }
    ExpPoly& scale(const QPiNumber& c);

    // Integrate x_var from 0 to a*L + sum_j b_j x_j (the variable itself must
    // not appear in the bound).  The result no longer involves x_var.
    ExpPoly integrate(unsigned var, const Rational& a, const std::vector<Rational>& b) const;
    // Integrate x_var over [0, a*L].
    ExpPoly integrate_box(unsigned var, const Rational& a) const;
    // Integrate x_var over [lo*L, hi*L].
    ExpPoly integrate_segment(unsigned var, const Rational& lo, const Rational& hi) const;

    // After all variables are integrated out, terms depend on L only.
    BigFloat eval_at_L(const BigFloat& L) const;

    struct Leading {
        QPiNumber coeff;
        Rational lam;
        unsigned p = 0;
    };
    // Dominant term for L -> infinity: maximal lam, then maximal L power.
    // Requires a variable-free expression.
    Leading leading_term() const;

private:
    void add_term(Key key, QPiNumber c);
    unsigned nvars_;
    std::map<Key, QPiNumber> terms_;
};

}  // namespace wpstat
