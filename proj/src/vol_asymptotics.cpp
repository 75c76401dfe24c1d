#include "wpstat/vol_asymptotics.hpp"

namespace wpstat {

BigFloat conjectured_alpha() { return 1 / sqrt(const_pi()); }

BigFloat mz_estimate(long long g, int n, const BigFloat& alpha) {
    if (g < 2) throw DomainError("mz_estimate requires g >= 2");
    const long long idx = 2 * g - 3 + n;
    BigFloat fourpisq = 4 * const_pi() * const_pi();
    BigFloat fac = exp(lgamma(BigFloat(idx + 1)));
    return alpha / sqrt(BigFloat(g)) * fac * pow(fourpisq, static_cast<unsigned long>(idx));
}

BigFloat estimate_alpha(VolumeTable& volumes, int g_max) {
    if (g_max < 2) throw DomainError("estimate_alpha requires g >= 2");
    const QPiNumber vg = volumes.value(g_max, 0);
    BigFloat fourpisq = 4 * const_pi() * const_pi();
    BigFloat denom = to_bigfloat(Rational(factorial(2 * g_max - 3))) *
                     pow(fourpisq, static_cast<unsigned>(2 * g_max - 3));
    return sqrt(BigFloat(g_max)) * vg.eval_here() / denom;
}

BigFloat mz_leading_ratio(long long g1, int n1, long long g2, int n2) {
    const long long i1 = 2 * g1 - 3 + n1, i2 = 2 * g2 - 3 + n2;
    if (i1 > i2) throw DomainError("mz_leading_ratio requires 2g1-3+n1 <= 2g2-3+n2");
    // i1! / i2! = 1 / prod_{j=i1+1}^{i2} j, taken exactly.
    BigFloat denom = 1;
    for (long long j = i1 + 1; j <= i2; ++j) denom *= BigFloat(j);
    BigFloat fourpisq = 4 * const_pi() * const_pi();
    return sqrt(BigFloat(g2)) / sqrt(BigFloat(g1)) /
           (denom * pow(fourpisq, static_cast<unsigned long>(i2 - i1)));
}

BigFloat sinh_ratio_half(const BigFloat& t) {
    if (t == 0) return BigFloat(1);
    BigFloat h = t / 2;
    return sinh(h) / h;
}

SinhBound sinh_upper_bound(VolumeTable& volumes, int g, int n, std::span<const BigFloat> x) {
    if (n < 1) throw DomainError("sinh_upper_bound requires n >= 1");
    if (static_cast<int>(x.size()) != n) throw DomainError("sinh_upper_bound: length count mismatch");
    for (const auto& xi : x)
        if (xi < 0) throw DomainError("sinh_upper_bound: lengths must be nonnegative");
    BigFloat v = volumes.value(g, n).eval_here();
    for (const auto& xi : x) v *= sinh_ratio_half(xi);
    return SinhBound{v, v};
}

}  // namespace wpstat
