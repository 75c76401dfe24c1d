#pragma once

// Hyperbolic-trigonometric formulas for half-collars and cylinders, the
// Maskit extremal-length bracket, Euler-characteristic bounds for unions of
// subsurfaces, and the large-genus threshold windows.

#include "wpstat/numeric.hpp"

#include <string>

namespace wpstat {

struct Cylinder {
    BigFloat l;  // geodesic boundary length, > 0
    BigFloat w;  // width, >= 0
    Cylinder(BigFloat l_, BigFloat w_) : l(std::move(l_)), w(std::move(w_)) {
        if (l <= 0 || w < 0) throw DomainError("Cylinder requires l > 0 and w >= 0");
    }
};

struct Window {
    BigFloat lower;
    BigFloat upper;
    std::string description;
    Window(BigFloat lo, BigFloat hi, std::string desc = {})
        : lower(std::move(lo)), upper(std::move(hi)), description(std::move(desc)) {
        if (lower > upper) throw DomainError("Window requires lower <= upper");
    }
};

// theta = 2 (arctan(e^w) - pi/4), equivalently cosh(w) = 1/cos(theta).
BigFloat collar_theta(const BigFloat& w);
// inverse: w = arccosh(1/cos(theta)) for theta in [0, pi/2)
BigFloat collar_width(const BigFloat& theta);
// the cosh(w) = 1/cos(theta) route, exposed for the identity check
BigFloat collar_theta_via_cos(const BigFloat& w);

BigFloat cylinder_outer_length(const Cylinder& c);  // l cosh(w)
BigFloat cylinder_area(const Cylinder& c);          // l sinh(w)

// [2(arctan(e^w) - pi/4) ext, pi ext] bracketing the hyperbolic length.
Window maskit_window(const BigFloat& ext, const BigFloat& w);

// |chi(X12)| window: [1 + max(chi1, chi2), floor(chi1 + chi2 + (l1+l2)/(2 pi))]
Window chi_union_bounds(long chi1, long chi2, const BigFloat& l1, const BigFloat& l2);

// (1/2) log g - (3/2 + eps) loglog g
BigFloat half_collar_width_threshold(long long g, const BigFloat& eps);
// [(2-eps)/pi log g, (4+eps)/pi log g]
Window ext_systole_window(long long g, const BigFloat& eps);
// [(1-eps) log g / pi, log g / pi]
Window cheeger_h1_window(long long g, const BigFloat& eps);
// [0.001/log g, (1+eps) 0.125/log g]
Window lambda1_ratio_window(long long g, const BigFloat& eps);
// C log g; C is configuration, not a paper-asserted constant (default 8).
BigFloat l1_sup_bound(long long g, const BigFloat& C);
inline constexpr double kDefaultL1SupConstant = 8.0;

}  // namespace wpstat
