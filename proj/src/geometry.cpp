#include "wpstat/geometry.hpp"

namespace wpstat {

BigFloat collar_theta(const BigFloat& w) {
    if (w < 0) throw DomainError("collar_theta requires w >= 0");
    return 2 * (atan(exp(w)) - const_pi() / 4);
}

BigFloat collar_theta_via_cos(const BigFloat& w) {
    if (w < 0) throw DomainError("collar_theta requires w >= 0");
    return acos(1 / cosh(w));
}

BigFloat collar_width(const BigFloat& theta) {
    if (theta < 0 || theta >= const_pi() / 2)
        throw DomainError("collar_width requires theta in [0, pi/2)");
    return acosh(1 / cos(theta));
}

BigFloat cylinder_outer_length(const Cylinder& c) { return c.l * cosh(c.w); }

BigFloat cylinder_area(const Cylinder& c) { return c.l * sinh(c.w); }

Window maskit_window(const BigFloat& ext, const BigFloat& w) {
    if (ext <= 0) throw DomainError("maskit_window requires ext > 0");
    return Window(collar_theta(w) * ext, const_pi() * ext, "Maskit length bracket");
}

Window chi_union_bounds(long chi1, long chi2, const BigFloat& l1, const BigFloat& l2) {
    if (chi1 < 1 || chi2 < 1) throw DomainError("chi_union_bounds requires chi_i >= 1");
    if (l1 < 0 || l2 < 0) throw DomainError("chi_union_bounds requires l_i >= 0");
    BigFloat lower(1 + std::max(chi1, chi2));
    BigFloat upper_raw = BigFloat(chi1 + chi2) + (l1 + l2) / (2 * const_pi());
    BigFloat upper = floor(upper_raw);
    return Window(lower, upper, "chi(X12) union bounds");
}

BigFloat half_collar_width_threshold(long long g, const BigFloat& eps) {
    if (g < 3) throw DomainError("half_collar_width_threshold requires g >= 3");
    if (eps <= 0) throw DomainError("half_collar_width_threshold requires eps > 0");
    BigFloat lg = log(BigFloat(g));
    return lg / 2 - (BigFloat(3) / 2 + eps) * log(lg);
}

Window ext_systole_window(long long g, const BigFloat& eps) {
    if (g < 3) throw DomainError("ext_systole_window requires g >= 3");
    if (eps <= 0 || eps >= 2) throw DomainError("ext_systole_window requires 0 < eps < 2");
    BigFloat lg = log(BigFloat(g));
    BigFloat pi = const_pi();
    return Window((2 - eps) / pi * lg, (4 + eps) / pi * lg, "extremal separating systole window");
}

Window cheeger_h1_window(long long g, const BigFloat& eps) {
    if (g < 3) throw DomainError("cheeger_h1_window requires g >= 3");
    if (eps <= 0) throw DomainError("cheeger_h1_window requires eps > 0");
    BigFloat lg = log(BigFloat(g));
    BigFloat pi = const_pi();
    return Window((1 - eps) * lg / pi, lg / pi, "first geometric Cheeger constant window");
}

Window lambda1_ratio_window(long long g, const BigFloat& eps) {
    if (g < 3) throw DomainError("lambda1_ratio_window requires g >= 3");
    if (eps <= 0) throw DomainError("lambda1_ratio_window requires eps > 0");
    BigFloat lg = log(BigFloat(g));
    return Window(BigFloat("0.001") / lg, (1 + eps) * BigFloat("0.125") / lg,
                  "lambda_1 / L_1 window");
}

BigFloat l1_sup_bound(long long g, const BigFloat& C) {
    if (g < 2) throw DomainError("l1_sup_bound requires g >= 2");
    if (C <= 0) throw DomainError("l1_sup_bound requires C > 0");
    return C * log(BigFloat(g));
}

}  // namespace wpstat
