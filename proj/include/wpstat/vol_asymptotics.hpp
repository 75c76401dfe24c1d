#pragma once

// Large-genus volume asymptotics: the leading term
//   V_{g,n} ~ alpha * g^(-1/2) * (2g-3+n)! * (4 pi^2)^(2g-3+n),
// exact-factorial ratio helpers built on it, and the sinh upper bound
//   V_{g,n}(x) <= prod_i sinh(x_i/2)/(x_i/2) * V_{g,n}.

#include "wpstat/volumes.hpp"

#include <span>

namespace wpstat {

// Conjectured value 1/sqrt(pi); used only where a point estimate of the
// universal constant is unavoidable, never asserted as ground truth.
BigFloat conjectured_alpha();

// Leading term evaluated at the current working precision.  g may be huge;
// the factorial goes through lgamma.
BigFloat mz_estimate(long long g, int n, const BigFloat& alpha);

// sqrt(g) V_g / ((2g-3)! (4 pi^2)^(2g-3)) at g = g_max (exact volume side).
BigFloat estimate_alpha(VolumeTable& volumes, int g_max);

// Ratio of leading terms V_{g1,n1} / V_{g2,n2} with alpha cancelled and the
// factorial quotient taken exactly (no Stirling error).  Requires
// 2g1-3+n1 <= 2g2-3+n2.
BigFloat mz_leading_ratio(long long g1, int n1, long long g2, int n2);

struct SinhBound {
    BigFloat bound;  // rigorous upper bound for V_{g,n}(x)
    BigFloat point;  // the same expression, read as the asymptotic point value
};

// prod sinh(x_i/2)/(x_i/2) * V_{g,n}; exact V within budget is required.
SinhBound sinh_upper_bound(VolumeTable& volumes, int g, int n, std::span<const BigFloat> x);

// sinh(t/2)/(t/2) with the limit value 1 at t = 0.
BigFloat sinh_ratio_half(const BigFloat& t);

}  // namespace wpstat
