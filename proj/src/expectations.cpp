#include "wpstat/expectations.hpp"

#include <algorithm>
#include <sstream>

namespace wpstat {

namespace {

// Pieces structurally small enough for an exact polynomial, independent of
// the user budget (guards the combinatorial size of the coefficient table).
bool piece_affordable(long long g, int n) {
    if (g < 0 || n < 0 || g > 64) return false;
    const long long d = 3 * g - 3 + n;
    if (d < 0 || d > 15) return false;
    Integer count = binomial(static_cast<unsigned>(n + d), static_cast<unsigned>(n));
    return count <= 20000;
}

BigFloat log_mz_leading(long long g, int n, const BigFloat& log_alpha, const BigFloat& log_4pi2) {
    const long long idx = 2 * g - 3 + n;
    return log_alpha - log(BigFloat(g)) / 2 + lgamma(BigFloat(idx + 1)) + BigFloat(idx) * log_4pi2;
}

}  // namespace

TopologySplit TopologySplit::two_piece(long long g, int g0, int k) {
    TopologySplit s;
    s.g = g;
    s.g0 = g0;
    s.n0 = k;
    s.complement = {{g - g0 - k + 1, k}};
    s.one_handle_count = (g0 == 1 && k == 1) ? 1 : 0;
    s.sym_order = factorial(static_cast<unsigned>(k));
    s.validate();
    return s;
}

void TopologySplit::validate() const {
    if (!stable_surface(g0, n0)) throw DomainError("split piece is not stable");
    if (complement.empty()) throw DomainError("split has no complement pieces");
    long long curve_sum = 0, genus_sum = g0;
    for (const auto& [gi, ni] : complement) {
        if (gi < 0 || ni < 1 || 2 * gi - 2 + ni < 1)
            throw DomainError("complement piece is not stable");
        curve_sum += ni;
        genus_sum += gi;
    }
    if (curve_sum != n0) throw DomainError("complement boundaries must sum to n0");
    if (genus_sum + n0 - static_cast<long long>(complement.size()) != g)
        throw DomainError("split genus equation g0 + sum g_i + n0 - q = g violated");
    if (sym_order < 1) throw DomainError("sym_order must be positive");
    if (one_handle_count < 0) throw DomainError("one_handle_count must be nonnegative");
}

BigFloat omega_value(OmegaChoice choice, long long g) {
    if (g < 3) throw DomainError("omega(g) requires g >= 3");
    BigFloat loglog = log(log(BigFloat(g)));
    switch (choice) {
        case OmegaChoice::sqrt_loglog:
            return sqrt(loglog);
        case OmegaChoice::logloglog:
            if (loglog <= 1) throw DomainError("logloglog omega requires g > e^e");
            return log(loglog);
    }
    throw DomainError("unknown omega choice");
}

BigFloat threshold_L(const ThresholdProfile& profile) {
    if (profile.g < 3) throw DomainError("threshold_L requires g >= 3");
    if (profile.sign != 1 && profile.sign != -1)
        throw DomainError("threshold sign must be +1 or -1");
    BigFloat lg = log(BigFloat(profile.g));
    return 2 * lg - 4 * log(lg) + profile.sign * omega_value(profile.omega, profile.g);
}

BigFloat scaling_diagnostic(long long g, const BigFloat& L) {
    if (g < 2) throw DomainError("scaling_diagnostic requires g >= 2");
    return L * L * exp(L / 2) / BigFloat(g);
}

BigFloat ExpectationEngine::leading_n11(long long g, const BigFloat& L) const {
    BigFloat pi = const_pi();
    return L * L * exp(L / 2) / (192 * pi * pi * BigFloat(g));
}

BigFloat ExpectationEngine::leading_n03(long long g, const BigFloat& L) const {
    BigFloat pi = const_pi();
    return L * L * exp(L / 2) / (48 * pi * pi * BigFloat(g));
}

BigFloat ExpectationEngine::complement_ratio_asym(const TopologySplit& split) const {
    // prod_i V_{g_i,n_i} / V_g with each small factor exact and each large
    // factor replaced by its leading form; computed in log space with extra
    // working digits (lgamma of huge arguments cancels).
    ScopedPrecision guard(BigFloat::default_precision() + 24);
    BigFloat log_alpha = log(alpha_);
    BigFloat log_4pi2 = log(4 * const_pi() * const_pi());
    BigFloat acc = -log_mz_leading(split.g, 0, log_alpha, log_4pi2);
    int mz_factors = 0;
    for (const auto& [gi, ni] : split.complement) {
        if (piece_affordable(gi, ni)) {
            acc += log(volumes_.polynomial_nolimit(static_cast<int>(gi), ni)
                           .value_at_zero()
                           .eval_here());
        } else {
            acc += log_mz_leading(gi, ni, log_alpha, log_4pi2);
            ++mz_factors;
        }
    }
    // alpha bookkeeping: each leading form carries one alpha, the ambient V_g
    // cancels one, so alpha^(mz_factors - 1) remains automatically
    return exp(acc);
}

std::optional<BigFloat> ExpectationEngine::leading_monomial_T(int g0, int k, const BigFloat& L) {
    if (!piece_affordable(g0, k)) return std::nullopt;
    const VolumePoly& piece = volumes_.polynomial_nolimit(g0, k);
    const int d0 = 3 * g0 - 3 + k;
    // T = sum_{|alpha| = d0} C_alpha prod (2 alpha_i)! * 2 L^(2d0+k-1) e^(L/2) / (2d0+k-1)!
    Rational top(0);
    for (const auto& [alpha, c] : piece.coeffs()) {
        long total = 0;
        for (auto a : alpha) total += a;
        if (total != d0) continue;
        Rational w(1);
        for (auto a : alpha) w *= Rational(factorial(2u * a));
        w *= c.terms().begin()->second;  // top coefficients are pure rationals
        top += w;
    }
    top *= Rational(2) / Rational(factorial(static_cast<unsigned>(2 * d0 + k - 1)));
    return to_bigfloat(top) * pow(L, 2 * d0 + k - 1) * exp(L / 2);
}

BigFloat ExpectationEngine::crude_split_bound(long long /*g*/, int /*g0*/, int k,
                                              const BigFloat& L) const {
    // 1/k! * L^(2k)/(2k)! * e^L  (e^(x/2)-sandwich route; the volume ratio
    // multiplies at the call site)
    BigFloat t = exp(L) / to_bigfloat(Rational(factorial(static_cast<unsigned>(k)) *
                                               factorial(static_cast<unsigned>(2 * k))));
    return t * pow(L, 2 * k);
}

BigFloat ExpectationEngine::pair_ratio(long long g, long long g0, int k) const {
    // V_{g0,k} * V_{g',k} / V_g in the exact-factorial leading form; the
    // smaller side uses its exact value when affordable.
    const long long gp = g - g0 - k + 1;
    ScopedPrecision guard(BigFloat::default_precision() + 24);
    BigFloat log_alpha = log(alpha_);
    BigFloat log_4pi2 = log(4 * const_pi() * const_pi());
    BigFloat acc = -log_mz_leading(g, 0, log_alpha, log_4pi2) +
                   log_mz_leading(gp, k, log_alpha, log_4pi2);
    if (piece_affordable(g0, k)) {
        acc += log(volumes_.polynomial_nolimit(static_cast<int>(g0), k)
                       .value_at_zero()
                       .eval_here());
    } else {
        acc += log_mz_leading(g0, k, log_alpha, log_4pi2);  // one net alpha_ remains
    }
    return exp(acc);
}

BigFloat ExpectationEngine::exact_integral(const TopologySplit& split, const BigFloat& L) const {
    const int k = split.n0;
    // product of all piece polynomials over the k curve variables
    std::map<MultiIndex, QPiNumber> prod;
    prod.emplace(MultiIndex(static_cast<size_t>(k), 0), QPiNumber(1));
    auto multiply_piece = [&](const VolumePoly& piece, int var_offset) {
        std::map<MultiIndex, QPiNumber> next;
        for (const auto& [alpha, c] : prod)
            for (const auto& [beta, d] : piece.coeffs()) {
                MultiIndex idx = alpha;
                for (size_t t = 0; t < beta.size(); ++t)
                    idx[var_offset + t] = static_cast<std::uint16_t>(idx[var_offset + t] + beta[t]);
                QPiNumber v = c * d;
                auto [it, inserted] = next.emplace(std::move(idx), v);
                if (!inserted) it->second += v;
            }
        prod = std::move(next);
    };
    multiply_piece(volumes_.polynomial(split.g0, k), 0);
    int offset = 0;
    for (const auto& [gi, ni] : split.complement) {
        multiply_piece(volumes_.polynomial(static_cast<int>(gi), ni), offset);
        offset += ni;
    }
    // Dirichlet formula per monomial: int_{sum <= L} prod x^(2a_i+1) dx =
    // prod (2a_i+1)! * L^(2|a|+2k) / (2|a|+2k)!
    std::map<unsigned, QPiNumber> by_power;
    for (const auto& [alpha, c] : prod) {
        unsigned total = 0;
        Rational w(1);
        for (auto a : alpha) {
            total += 2u * a;
            w *= Rational(factorial(2u * a + 1));
        }
        const unsigned dpow = total + 2u * static_cast<unsigned>(k);
        w /= Rational(factorial(dpow));
        QPiNumber v = c;
        v.mul_rational(w);
        auto [it, inserted] = by_power.emplace(dpow, std::move(v));
        if (!inserted) it->second += v;
    }
    BigFloat acc = 0;
    for (const auto& [dpow, c] : by_power) acc += c.eval_here() * pow(L, dpow);
    return acc;
}

ExpectationResult ExpectationEngine::expected_count(const TopologySplit& split, const BigFloat& L,
                                                    EvalMode mode) {
    split.validate();
    if (L < 0) throw DomainError("expected_count requires L >= 0");
    const int k = split.n0;
    const long long chi = 2 * split.g0 - 2 + k;
    BigFloat prefactor = to_bigfloat(Rational(1, Integer(1) << split.one_handle_count)) /
                         to_bigfloat(Rational(split.sym_order));

    ExpectationResult result;
    result.mode = mode;
    BigFloat pi = const_pi();
    std::optional<BigFloat> T = leading_monomial_T(split.g0, k, L);
    // lemma-form leading 2^(-M)/|Sym| (8 pi^2 g)^(-chi) T(L); reproduces
    // L^2 e^(L/2)/(192 pi^2 g) and /(48 pi^2 g) for the (1,1), (0,3) splits
    {
        const BigFloat scale = pow(8 * pi * pi * BigFloat(split.g), static_cast<unsigned long>(chi));
        result.leading_term =
            (T ? prefactor * *T : crude_split_bound(split.g, split.g0, k, L)) / scale;
    }

    if (mode == EvalMode::exact) {
        const QPiNumber vg = volumes_.value(static_cast<int>(split.g), 0);
        result.value = prefactor * exact_integral(split, L) / vg.eval_here();
        result.note = "exact: closed-form simplex integration, no quadrature";
        return result;
    }
    const BigFloat ratio = complement_ratio_asym(split);
    if (T) {
        result.value = prefactor * ratio * *T;
        result.note =
            "asymptotic: sinh point value, leading monomial, exact-factorial volume ratios; "
            "unquantified corrections O(1/L), O(L^2/g), O(1/g)";
    } else {
        // split piece too large for an exact polynomial: fall back to the
        // e^(x/2)-sandwich bound 1/k! L^(2k)/(2k)! e^L with 2^(-M) <= 1
        BigFloat vsplit;
        {
            ScopedPrecision guard(BigFloat::default_precision() + 24);
            vsplit = exp(log_mz_leading(split.g0, k, log(alpha_),
                                        log(4 * const_pi() * const_pi())));
        }
        result.value = ratio * vsplit * crude_split_bound(split.g, split.g0, k, L);
        result.note = "asymptotic: split piece too large for an exact polynomial; "
                      "e^(x/2)-sandwich bound substituted for this split";
    }
    return result;
}

BigFloat ExpectationEngine::sum_expected_chi_eq_m(long long g, const BigFloat& L, int m,
                                                  EvalMode mode) {
    if (m < 1) throw DomainError("sum_expected_chi_eq_m requires m >= 1");
    if (L < 0) throw DomainError("sum_expected_chi_eq_m requires L >= 0");
    BigFloat total = 0;
    for (int k = 1; k <= m + 2; ++k) {
        const int num = m + 2 - k;
        if (num < 0 || num % 2 != 0) continue;
        const int g0 = num / 2;
        const long long gp = g - g0 - k + 1;
        if (!stable_surface(g0, k) || gp < 0 || 2 * gp - 2 + k < 1) continue;
        total += expected_count(TopologySplit::two_piece(g, g0, k), L, mode).value;
    }
    return total;
}

BigFloat ExpectationEngine::sum_expected_chi_ge_m(long long g, const BigFloat& L, int m) {
    if (m < 1) throw DomainError("sum_expected_chi_ge_m requires m >= 1");
    if (L < 0) throw DomainError("sum_expected_chi_ge_m requires L >= 0");
    if (L == 0) return BigFloat(0);
    BigFloat total = 0;
    const BigFloat eL = exp(L);
    for (int k = 1; k <= 256; ++k) {
        BigFloat kfac = pow(L, 2 * k) * eL /
                        to_bigfloat(Rational(factorial(static_cast<unsigned>(k)) *
                                             factorial(static_cast<unsigned>(2 * k))));
        // admissible g0 range for m <= 2g0-2+k <= g-1 with a stable complement
        long long g0_lo = 0;
        while (2 * g0_lo - 2 + k < m || 2 * g0_lo - 2 + k < 1) ++g0_lo;
        long long g0_hi = -1;
        for (long long chi = g - 1; chi >= m; --chi) {
            if ((chi + 2 - k) % 2 != 0) continue;
            const long long cand = (chi + 2 - k) / 2;
            if (cand < 0) continue;
            const long long gp = g - cand - k + 1;
            if (gp >= 0 && 2 * gp - 2 + k >= 1) {
                g0_hi = cand;
                break;
            }
        }
        if (g0_hi < g0_lo) {
            if (k > 2 * m + 8) break;
            continue;
        }
        // The summand decays extremely fast away from both chi edges; sum
        // from each edge and stop once terms are negligible.
        BigFloat inner = 0;
        long long left_end = g0_hi;
        {
            BigFloat prev = -1;
            for (long long g0 = g0_lo; g0 <= g0_hi; ++g0) {
                BigFloat t = pair_ratio(g, g0, k);
                inner += t;
                if (prev >= 0 && t <= prev && t < inner * BigFloat(1e-40)) {
                    left_end = g0;
                    break;
                }
                prev = t;
            }
        }
        if (left_end < g0_hi) {
            BigFloat prev = -1;
            for (long long g0 = g0_hi; g0 > left_end; --g0) {
                BigFloat t = pair_ratio(g, g0, k);
                inner += t;
                if (prev >= 0 && t <= prev && t < inner * BigFloat(1e-40)) break;
                prev = t;
            }
        }
        BigFloat term = kfac * inner;
        total += term;
        if (k > 4 && term < total * BigFloat(1e-40)) break;
    }
    return total;
}

BigFloat ExpectationEngine::prob_upper_L1(const ThresholdProfile& profile) {
    if (profile.sign != -1)
        throw DomainError("prob_upper_L1 uses the minus threshold (sign must be -)");
    const BigFloat L = threshold_L(profile);
    BigFloat total = leading_n11(profile.g, L) + leading_n03(profile.g, L);
    for (int m = 2; m <= chi_cap; ++m)
        total += sum_expected_chi_eq_m(profile.g, L, m, EvalMode::asymptotic);
    total += sum_expected_chi_ge_m(profile.g, L, chi_cap + 1);
    return total;
}

ExpectationResult ExpectationEngine::expected_pair_disjoint(long long g, const BigFloat& L,
                                                            EvalMode mode) {
    if (L < 0) throw DomainError("expected_pair_disjoint requires L >= 0");
    if (g < 2) throw DomainError("expected_pair_disjoint requires g >= 2");
    ExpectationResult result;
    result.mode = mode;
    BigFloat l11 = leading_n11(g, L);
    result.leading_term = l11 * l11;
    if (g == 2) {
        // two disjoint one-handle curves would leave an unstable S_{0,2}
        result.value = 0;
        result.note = "empty class: g = 2 admits no disjoint pair of one-handle curves";
        return result;
    }
    if (mode == EvalMode::exact) {
        const VolumePoly& v11 = volumes_.polynomial(1, 1);
        const VolumePoly& rest = volumes_.polynomial(static_cast<int>(g) - 2, 2);
        const QPiNumber vg = volumes_.value(static_cast<int>(g), 0);
        // 1/4 * int_{[0,L]^2} V11(x) V11(y) V_{g-2,2}(x,y) x y dx dy
        BigFloat acc = 0;
        for (const auto& [a1, c1] : v11.coeffs())
            for (const auto& [a2, c2] : v11.coeffs())
                for (const auto& [b, c3] : rest.coeffs()) {
                    const unsigned px = 2u * (a1[0] + b[0]) + 2u;
                    const unsigned py = 2u * (a2[0] + b[1]) + 2u;
                    QPiNumber c = c1 * c2 * c3;
                    c.mul_rational(Rational(1, px) * Rational(1, py));
                    acc += c.eval_here() * pow(L, px + py);
                }
        result.value = acc / (4 * vg.eval_here());
        result.note = "exact: closed-form box integration, no quadrature";
        return result;
    }
    // per-factor leading of int_0^L (x^2+4pi^2)/24 * 2 sinh(x/2) dx is
    // 2 L^2 e^(L/2) / 24; the volume ratio keeps exact factorials
    BigFloat ratio;
    {
        ScopedPrecision guard(BigFloat::default_precision() + 24);
        BigFloat log_alpha = log(alpha_);
        BigFloat log_4pi2 = log(4 * const_pi() * const_pi());
        ratio = exp(log_mz_leading(g - 2, 2, log_alpha, log_4pi2) -
                    log_mz_leading(g, 0, log_alpha, log_4pi2));
    }
    BigFloat per_factor = L * L * exp(L / 2) / 12;
    result.value = ratio * per_factor * per_factor / 4;
    result.note = "asymptotic: sinh point value, leading monomial per factor, exact-factorial "
                  "volume ratio; unquantified corrections O(1/L), O(L^2/g), O(1/g)";
    return result;
}

BigFloat ExpectationEngine::expected_hat_count(const TopologySplit& split, const BigFloat& L1,
                                               const BigFloat& L2, int handles) {
    split.validate();
    if (handles != 1 && handles != 2) throw DomainError("handles must be 1 or 2");
    if (split.g0 < handles)
        throw DomainError("split piece must contain the one-handles (g0 >= handles)");
    if (L1 < 0 || L2 < 0) throw DomainError("expected_hat_count requires L1, L2 >= 0");
    if (L1 == 0 || L2 == 0) return BigFloat(0);
    const int k = split.n0;
    const int inner_g = split.g0 - handles, inner_n = k + handles;
    if (!stable_surface(inner_g, inner_n))
        throw DomainError("expected_hat_count: inner piece (g0-handles, k+handles) not stable");

    // complement volumes / V_g with the 1/(n_1!...n_q!) symmetry factor
    BigFloat ratio = complement_ratio_asym(split);
    Rational sym(1);
    for (const auto& [gi, ni] : split.complement)
        sym *= Rational(factorial(static_cast<unsigned>(ni)));
    ratio /= to_bigfloat(sym);

    BigFloat pi = const_pi();
    auto simplex_exp_integral = [&](const MultiIndex& xa, const Rational& mu, const BigFloat& at) {
        // int_{sum x <= at} prod x_i^(2 xa_i) e^(mu sum x) dx
        ExpPoly p = ExpPoly::constant(static_cast<unsigned>(k), QPiNumber(1));
        for (int i = 0; i < k; ++i) {
            if (!xa.empty() && xa[i] > 0)
                p *= ExpPoly::monomial(static_cast<unsigned>(k), i, 2u * xa[i], QPiNumber(1));
            p *= ExpPoly::exponential(static_cast<unsigned>(k), i, mu);
        }
        for (int i = k - 1; i >= 0; --i) {
            std::vector<Rational> b(static_cast<size_t>(k), Rational(0));
            for (int j = 0; j < i; ++j) b[j] = Rational(-1);
            p = p.integrate(static_cast<unsigned>(i), Rational(1), b);
        }
        return p.eval_at_L(at);
    };

    if (!piece_affordable(inner_g, inner_n)) {
        // crude route: V_inner(y,x) <= e^((sum y + sum x)/2) V_inner
        BigFloat vin;
        {
            ScopedPrecision guard(BigFloat::default_precision() + 24);
            vin = exp(log_mz_leading(inner_g, inner_n, log(alpha_), log(4 * pi * pi)));
        }
        ExpPoly ychunk = ExpPoly::monomial(1, 0, 3, QPiNumber(Rational(1, 24))) +
                         ExpPoly::monomial(1, 0, 1, QPiNumber(Rational(1, 6), 2));
        ychunk *= ExpPoly::exponential(1, 0, Rational(1, 2));
        BigFloat yint = ychunk.integrate_box(0, Rational(1)).eval_at_L(L1);
        BigFloat xint = simplex_exp_integral(MultiIndex(), Rational(1), L2);
        return ratio * vin * pow(yint, handles) * xint;
    }

    const VolumePoly& inner = volumes_.polynomial_nolimit(inner_g, inner_n);
    // y-moment: int_0^{L1} (1/24)(y^2+4pi^2) y^(2a+1) dy
    auto y_moment = [&](unsigned a) {
        return pow(L1, 2 * a + 4) / (24 * (2 * a + 4)) +
               4 * pi * pi * pow(L1, 2 * a + 2) / (24 * (2 * a + 2));
    };
    std::map<MultiIndex, BigFloat> xint_cache;
    BigFloat integral = 0;
    for (const auto& [alpha, c] : inner.coeffs()) {
        BigFloat t = c.eval_here();
        for (int h = 0; h < handles; ++h) t *= y_moment(alpha[h]);
        MultiIndex xa(alpha.begin() + handles, alpha.end());
        auto it = xint_cache.find(xa);
        if (it == xint_cache.end())
            it = xint_cache.emplace(xa, simplex_exp_integral(xa, Rational(1, 2), L2)).first;
        integral += t * it->second;
    }
    return ratio * integral;
}

ExpectationEngine::ZStarBounds ExpectationEngine::z_star_bounds(long long g, const BigFloat& L) {
    if (g < 3) throw DomainError("z_star_bounds requires g >= 3");
    if (L < 0) throw DomainError("z_star_bounds requires L >= 0");
    ZStarBounds out{BigFloat(0), BigFloat(0)};
    if (L == 0) return out;

    // (V_{g-2,2} + sum_{1<=k<=(g-1)/2} V_{k,1} V_{g-k-1,1}) / V_g,
    // edge-dominated in k
    BigFloat vsum;
    {
        ScopedPrecision guard(BigFloat::default_precision() + 24);
        BigFloat log_alpha = log(alpha_);
        BigFloat log_4pi2 = log(4 * const_pi() * const_pi());
        BigFloat log_vg = log_mz_leading(g, 0, log_alpha, log_4pi2);
        vsum = exp(log_mz_leading(g - 2, 2, log_alpha, log_4pi2) - log_vg);
        for (long long kk = 1; 2 * kk <= g - 1; ++kk) {
            BigFloat t;
            if (piece_affordable(kk, 1))
                t = exp(log(volumes_.polynomial_nolimit(static_cast<int>(kk), 1)
                                .value_at_zero()
                                .eval_here()) +
                        log_mz_leading(g - kk - 1, 1, log_alpha, log_4pi2) - log_vg);
            else
                t = exp(log_mz_leading(kk, 1, log_alpha, log_4pi2) +
                        log_mz_leading(g - kk - 1, 1, log_alpha, log_4pi2) - log_vg);
            vsum += t;
            if (t < vsum * BigFloat(1e-40)) break;
        }
    }

    BigFloat pi = const_pi();
    const Rational nineteen_tenths(19, 10);

    // Z1*: (100/24) * [int_0^L z(z^2+4pi^2) dz] *
    //      int_{x+y<=1.9L} e^((x+y)/2) (1+x) (1 + e^(-(x+y)/2) e^(L/2)) dx dy
    {
        BigFloat zint = pow(L, 4) / 4 + 2 * pi * pi * L * L;
        ExpPoly one_plus_x =
            ExpPoly::constant(2, QPiNumber(1)) + ExpPoly::monomial(2, 0, 1, QPiNumber(1));
        ExpPoly exp_half =
            ExpPoly::exponential(2, 0, Rational(1, 2)) * ExpPoly::exponential(2, 1, Rational(1, 2));
        auto simplex2 = [&](const ExpPoly& p) {
            std::vector<Rational> b(2, Rational(0));
            b[0] = Rational(-1);
            return p.integrate(1, nineteen_tenths, b).integrate_box(0, nineteen_tenths);
        };
        // e^((x+y)/2)(1+x) + e^(L/2)(1+x), the second via an L-carrying factor
        ExpPoly part1 = simplex2(exp_half * one_plus_x);
        ExpPoly part2 = simplex2(one_plus_x) * ExpPoly::l_term(2, QPiNumber(1), Rational(1, 2), 0);
        out.z1 = Rational(100, 24).convert_to<BigFloat>() * vsum * zint *
                 (part1.eval_at_L(L) + part2.eval_at_L(L));
    }

    // Z2*: 2000 * (L^2/2) * I_shell with
    // I_shell = int_0^{1.9L} s e^(s/2) ((2L-s)^2 - (1.9L-s)^2)/8 ds
    //         + int_{1.9L}^{2L} s e^(s/2) (2L-s)^2/8 ds
    {
        ExpPoly e_half = ExpPoly::exponential(1, 0, Rational(1, 2));
        ExpPoly s1 = ExpPoly::monomial(1, 0, 1, QPiNumber(1));
        ExpPoly s2 = ExpPoly::monomial(1, 0, 2, QPiNumber(1));
        ExpPoly s3 = ExpPoly::monomial(1, 0, 3, QPiNumber(1));
        auto L_pow = [&](const Rational& c, unsigned p) {
            return ExpPoly::l_term(1, QPiNumber(c), Rational(0), p);
        };
        // f1 = s e^(s/2) ((2L-s)^2-(1.9L-s)^2)/8 = e^(s/2) (39/800 L^2 s - 1/40 L s^2)
        ExpPoly f1 = e_half * (s1 * L_pow(Rational(39, 800), 2) + s2 * L_pow(Rational(-1, 40), 1));
        // f2 = s e^(s/2) (2L-s)^2/8 = e^(s/2) (1/2 L^2 s - 1/2 L s^2 + 1/8 s^3)
        ExpPoly f2 = e_half * (s1 * L_pow(Rational(1, 2), 2) + s2 * L_pow(Rational(-1, 2), 1) +
                               s3 * L_pow(Rational(1, 8), 0));
        ExpPoly shell = f1.integrate_segment(0, Rational(0), nineteen_tenths) +
                        f2.integrate_segment(0, nineteen_tenths, Rational(2));
        out.z2 = 2000 * vsum * (L * L / 2) * shell.eval_at_L(L);
    }
    return out;
}

ExpectationEngine::ProbNoShortHandle ExpectationEngine::prob_no_short_handle_bound(
    const ThresholdProfile& profile) {
    if (profile.sign != 1)
        throw DomainError("prob_no_short_handle_bound uses the plus threshold (sign must be +)");
    const BigFloat L = threshold_L(profile);
    const BigFloat w = omega_value(profile.omega, profile.g);
    ProbNoShortHandle out;
    out.inv_expectation = 1 / leading_n11(profile.g, L);
    BigFloat lg = log(BigFloat(profile.g));
    out.variance_proxy =
        (pow(lg, 4) * exp(w) + pow(lg, 5) * exp(BigFloat(3) * w / 2)) / BigFloat(profile.g);
    out.z_over_n_sq = 1 / L;
    out.total = out.inv_expectation + out.variance_proxy + out.z_over_n_sq;
    out.note = "surrogates: E[N*] ~ leading_n11, E[Y*] ~ leading_n11^2; reported correction "
               "magnitudes O((log g)^4 e^w / g), O((log g)^5 e^(1.5w) / g), O(1/L)";
    return out;
}

}  // namespace wpstat
