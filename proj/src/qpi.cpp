#include "wpstat/qpi.hpp"

#include <sstream>
#include <vector>

namespace wpstat {

Rational bernoulli(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    for (unsigned m = cache.size(); m <= n; ++m) {
        // B_m = -1/(m+1) * sum_{j<m} C(m+1,j) B_j
        Rational s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * cache[j];
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[n];
}

QPiNumber zeta_even(unsigned i) {
    if (i == 0) throw DomainError("zeta_even: i must be >= 1 (zeta(0) is not in Q[pi])");
    // zeta(2i) = (-1)^(i+1) B_{2i} 2^(2i-1) / (2i)! * pi^(2i)
    Rational q = bernoulli(2 * i) * Rational(Integer(1) << (2 * i - 1)) / Rational(factorial(2 * i));
    if (i % 2 == 0) q = -q;
    return QPiNumber(q, 2 * i);
}

void QPiNumber::add_term(unsigned k, const Rational& q) {
    if (q == 0) return;
    auto [it, inserted] = terms_.emplace(k, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    }
}

bool QPiNumber::is_positive() const {
    for (const auto& [k, q] : terms_)
        if (q <= 0) return false;
    return true;
}

bool QPiNumber::is_positive_multiple_of_pi_power(unsigned expected_exp) const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& [k, q] = *terms_.begin();
    return k == expected_exp && q > 0;
}

QPiNumber& QPiNumber::operator+=(const QPiNumber& o) {
    for (const auto& [k, q] : o.terms_) add_term(k, q);
    return *this;
}

QPiNumber& QPiNumber::operator-=(const QPiNumber& o) {
    for (const auto& [k, q] : o.terms_) add_term(k, -q);
    return *this;
}

QPiNumber& QPiNumber::operator*=(const QPiNumber& o) {
    std::map<unsigned, Rational> out;
    for (const auto& [ka, qa] : terms_)
        for (const auto& [kb, qb] : o.terms_) {
            Rational p = qa * qb;
            auto [it, inserted] = out.emplace(ka + kb, p);
            if (!inserted) it->second += p;
        }
    terms_.clear();
    for (auto& [k, q] : out)
        if (q != 0) terms_.emplace(k, std::move(q));
    return *this;
}

QPiNumber QPiNumber::operator-() const {
    QPiNumber r;
    for (const auto& [k, q] : terms_) r.terms_.emplace(k, -q);
    return r;
}

QPiNumber& QPiNumber::mul_rational(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= q;
    return *this;
}

QPiNumber& QPiNumber::mul_pi_power(unsigned k) {
    if (k == 0 || terms_.empty()) return *this;
    std::map<unsigned, Rational> out;
    for (auto& [e, q] : terms_) out.emplace(e + k, std::move(q));
    terms_ = std::move(out);
    return *this;
}

BigFloat QPiNumber::eval_here() const {
    if (terms_.empty()) return BigFloat(0);
    BigFloat pi = const_pi();
    BigFloat acc = 0;
    // Horner over the (sparse) exponent ladder, highest first.
    unsigned prev = 0;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (first) {
            acc = to_bigfloat(it->second);
            prev = it->first;
            first = false;
            continue;
        }
        acc *= pow(pi, prev - it->first);
        acc += to_bigfloat(it->second);
        prev = it->first;
    }
    return acc * pow(pi, prev);
}

BigFloat QPiNumber::eval(unsigned precision) const {
    require_precision(precision);
    ScopedPrecision guard(precision + kGuardDigits);
    return eval_here();
}

std::string QPiNumber::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, q] : terms_) {
        if (!first) os << "+";
        os << numerator(q) << "/" << denominator(q) << "*pi^" << k;
        first = false;
    }
    return os.str();
}

QPiNumber QPiNumber::parse(const std::string& text) {
    if (text == "0") return QPiNumber();
    QPiNumber out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find('+', pos + 1);  // '+' at pos could be a sign? grammar never emits one
        if (next == std::string::npos) next = text.size();
        const std::string term = text.substr(pos, next - pos);
        const size_t slash = term.find('/');
        const size_t star = term.find("*pi^");
        if (slash == std::string::npos || star == std::string::npos || slash > star)
            throw DomainError("QPiNumber::parse: bad term '" + term + "'");
        const Integer num(term.substr(0, slash));
        const Integer den(term.substr(slash + 1, star - slash - 1));
        const unsigned k = static_cast<unsigned>(std::stoul(term.substr(star + 4)));
        if (den == 0) throw DomainError("QPiNumber::parse: zero denominator");
        out.add_term(k, Rational(num, den));
        pos = next + (next < text.size() ? 1 : 0);
    }
    return out;
}

}  // namespace wpstat
