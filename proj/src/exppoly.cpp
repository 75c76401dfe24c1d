#include "wpstat/exppoly.hpp"

#include <functional>

namespace wpstat {

ExpPoly ExpPoly::constant(unsigned nvars, QPiNumber c) {
    ExpPoly r(nvars);
    Key k;
    k.mu.assign(nvars, Rational(0));
    k.e.assign(nvars, 0u);
    r.add_term(std::move(k), std::move(c));
    return r;
}

ExpPoly ExpPoly::l_term(unsigned nvars, QPiNumber c, const Rational& lam, unsigned p) {
    ExpPoly r(nvars);
    Key k;
    k.lam = lam;
    k.p = p;
    k.mu.assign(nvars, Rational(0));
    k.e.assign(nvars, 0u);
    r.add_term(std::move(k), std::move(c));
    return r;
}

ExpPoly ExpPoly::monomial(unsigned nvars, unsigned var, unsigned power, QPiNumber c) {
    ExpPoly r = constant(nvars, std::move(c));
    if (!r.terms_.empty() && power > 0) {
        auto node = r.terms_.extract(r.terms_.begin());
        node.key().e[var] = power;
        r.terms_.insert(std::move(node));
    }
    return r;
}

ExpPoly ExpPoly::exponential(unsigned nvars, unsigned var, const Rational& mu) {
    ExpPoly r = constant(nvars, QPiNumber(1));
    auto node = r.terms_.extract(r.terms_.begin());
    node.key().mu[var] = mu;
    r.terms_.insert(std::move(node));
    return r;
}

void ExpPoly::add_term(Key key, QPiNumber c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(key), std::move(c));
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ExpPoly& ExpPoly::operator*=(const ExpPoly& o) {
    ExpPoly out(nvars_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            Key k;
            k.lam = ka.lam + kb.lam;
            k.p = ka.p + kb.p;
            k.mu.resize(nvars_);
            k.e.resize(nvars_);
            for (unsigned i = 0; i < nvars_; ++i) {
                k.mu[i] = ka.mu[i] + kb.mu[i];
                k.e[i] = ka.e[i] + kb.e[i];
            }
            out.add_term(std::move(k), ca * cb);
        }
    terms_ = std::move(out.terms_);
    return *this;
}

ExpPoly& ExpPoly::scale(const QPiNumber& c) {
    ExpPoly out(nvars_);
    for (const auto& [k, v] : terms_) out.add_term(k, v * c);
    terms_ = std::move(out.terms_);
    return *this;
}

namespace {

// (a*L + sum_j b_j x_j)^power expanded into ExpPoly keys; appended onto a
// base key/coefficient via the supplied sink.
void expand_bound_power(const Rational& a, const std::vector<Rational>& b, unsigned power,
                        const ExpPoly::Key& base, const QPiNumber& coeff, unsigned /*nvars*/,
                        const std::function<void(ExpPoly::Key, QPiNumber)>& sink) {
    // collect the nonzero symbols: L (if a != 0) and each x_j with b_j != 0
    std::vector<int> vars;  // -1 encodes L
    std::vector<Rational> coefs;
    if (a != 0) {
        vars.push_back(-1);
        coefs.push_back(a);
    }
    for (unsigned j = 0; j < b.size(); ++j)
        if (b[j] != 0) {
            vars.push_back(static_cast<int>(j));
            coefs.push_back(b[j]);
        }
    if (vars.empty()) {
        if (power == 0) sink(base, coeff);
        return;
    }
    // multinomial expansion over vars
    const size_t s = vars.size();
    std::vector<unsigned> part(s, 0);
    auto rec = [&](auto&& self, size_t idx, unsigned remaining, const Rational& mult) -> void {
        if (idx == s - 1) {
            part[idx] = remaining;
            Rational m = mult;
            for (unsigned t = 0; t < remaining; ++t) m *= coefs[idx];
            // multinomial coefficient power! / prod part!
            Integer mc = factorial(power);
            for (auto pi : part) mc /= factorial(pi);
            m *= Rational(mc);
            ExpPoly::Key k = base;
            QPiNumber c = coeff;
            c.mul_rational(m);
            for (size_t t = 0; t < s; ++t) {
                if (vars[t] < 0)
                    k.p += part[t];
                else
                    k.e[static_cast<size_t>(vars[t])] += part[t];
            }
            sink(std::move(k), std::move(c));
            return;
        }
        Rational m = mult;
        for (unsigned v = 0; v <= remaining; ++v) {
            if (v > 0) m *= coefs[idx];
            part[idx] = v;
            self(self, idx + 1, remaining - v, m);
        }
    };
    rec(rec, 0, power, Rational(1));
}

}  // namespace

ExpPoly ExpPoly::integrate(unsigned var, const Rational& a, const std::vector<Rational>& b) const {
    if (var >= nvars_) throw DomainError("ExpPoly::integrate: bad variable");
    if (!b.empty() && b.size() != nvars_) throw DomainError("ExpPoly::integrate: bad bound");
    if (!b.empty() && b[var] != 0) throw DomainError("ExpPoly::integrate: bound involves the variable");
    ExpPoly out(nvars_);
    auto sink = [&out](Key k, QPiNumber c) { out.add_term(std::move(k), std::move(c)); };
    const std::vector<Rational> zero_bound(nvars_, Rational(0));
    const std::vector<Rational>& bb = b.empty() ? zero_bound : b;

    for (const auto& [key, coeff] : terms_) {
        const unsigned e = key.e[var];
        const Rational mu = key.mu[var];
        Key base = key;
        base.e[var] = 0;
        base.mu[var] = Rational(0);
        if (mu == 0) {
            // antiderivative x^(e+1)/(e+1); value at upper bound only
            QPiNumber c = coeff;
            c.mul_rational(Rational(1, e + 1));
            expand_bound_power(a, bb, e + 1, base, c, nvars_, sink);
        } else {
            // antiderivative exp(mu x) * sum_{j<=e} (-1)^(e-j) e!/j! x^j / mu^(e-j+1)
            for (unsigned j = 0; j <= e; ++j) {
                Rational r = Rational(factorial(e)) / Rational(factorial(j));
                Rational mu_pow = 1;
                for (unsigned t = 0; t < e - j + 1; ++t) mu_pow *= mu;
                r /= mu_pow;
                if ((e - j) % 2 == 1) r = -r;
                // upper bound: exp(mu*(aL + sum b_j x_j)) * U^j
                {
                    Key k = base;
                    k.lam += mu * a;
                    for (unsigned t = 0; t < nvars_; ++t) k.mu[t] += mu * bb[t];
                    QPiNumber c = coeff;
                    c.mul_rational(r);
                    expand_bound_power(a, bb, j, k, c, nvars_, sink);
                }
                // lower bound 0: only the j = 0 term survives, exp(0)=1
                if (j == 0) {
                    QPiNumber c = coeff;
                    c.mul_rational(-r);
                    sink(base, std::move(c));
                }
            }
        }
    }
    return out;
}

ExpPoly ExpPoly::integrate_box(unsigned var, const Rational& a) const {
    return integrate(var, a, std::vector<Rational>(nvars_, Rational(0)));
}

ExpPoly ExpPoly::integrate_segment(unsigned var, const Rational& lo, const Rational& hi) const {
    if (var >= nvars_) throw DomainError("ExpPoly::integrate_segment: bad variable");
    ExpPoly out(nvars_);
    auto sink = [&out](Key k, QPiNumber c) { out.add_term(std::move(k), std::move(c)); };
    const std::vector<Rational> no_x(nvars_, Rational(0));

    // antiderivative evaluated at r*L, appended with the given sign
    auto emit_at = [&](const Key& key, const QPiNumber& coeff, const Rational& r, bool negate) {
        const unsigned e = key.e[var];
        const Rational mu = key.mu[var];
        Key base = key;
        base.e[var] = 0;
        base.mu[var] = Rational(0);
        if (mu == 0) {
            QPiNumber c = coeff;
            c.mul_rational(Rational(1, e + 1) * (negate ? Rational(-1) : Rational(1)));
            expand_bound_power(r, no_x, e + 1, base, c, nvars_, sink);
        } else {
            for (unsigned j = 0; j <= e; ++j) {
                Rational rr = Rational(factorial(e)) / Rational(factorial(j));
                Rational mu_pow = 1;
                for (unsigned t = 0; t < e - j + 1; ++t) mu_pow *= mu;
                rr /= mu_pow;
                if ((e - j) % 2 == 1) rr = -rr;
                if (negate) rr = -rr;
                Key k = base;
                k.lam += mu * r;
                QPiNumber c = coeff;
                c.mul_rational(rr);
                expand_bound_power(r, no_x, j, k, c, nvars_, sink);
            }
        }
    };
    for (const auto& [key, coeff] : terms_) {
        emit_at(key, coeff, hi, false);
        emit_at(key, coeff, lo, true);
    }
    return out;
}

BigFloat ExpPoly::eval_at_L(const BigFloat& L) const {
    BigFloat acc = 0;
    for (const auto& [k, c] : terms_) {
        for (unsigned i = 0; i < nvars_; ++i)
            if (k.e[i] != 0 || k.mu[i] != 0)
                throw DomainError("ExpPoly::eval_at_L: free variables remain");
        BigFloat t = c.eval_here();
        for (unsigned i = 0; i < k.p; ++i) t *= L;
        if (k.lam != 0) t *= exp(to_bigfloat(k.lam) * L);
        acc += t;
    }
    return acc;
}

ExpPoly::Leading ExpPoly::leading_term() const {
    if (terms_.empty()) return {};
    const Key* best = nullptr;
    const QPiNumber* c = nullptr;
    for (const auto& [k, v] : terms_) {
        for (unsigned i = 0; i < nvars_; ++i)
            if (k.e[i] != 0 || k.mu[i] != 0)
                throw DomainError("ExpPoly::leading_term: free variables remain");
        if (!best || k.lam > best->lam || (k.lam == best->lam && k.p > best->p)) {
            best = &k;
            c = &v;
        }
    }
    return Leading{*c, best->lam, best->p};
}

}  // namespace wpstat
