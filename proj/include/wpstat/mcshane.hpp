#pragma once

// Kernel functions of the generalized McShane identity and the counting
// bounds they yield on S_{1,2} / S_{0,4}.  All evaluation happens at the
// current working precision; nonpositive arguments are rejected (the limit
// values at 0 live in the tests, not here).

#include "wpstat/numeric.hpp"

namespace wpstat {

// D(x,y,z) = 2 log( (e^(x/2) + e^((y+z)/2)) / (e^(-x/2) + e^((y+z)/2)) )
BigFloat mcshane_d(const BigFloat& x, const BigFloat& y, const BigFloat& z);

// R(x,y,z) = x - log( (cosh(y/2) + cosh((x+z)/2)) / (cosh(y/2) + cosh((x-z)/2)) )
BigFloat mcshane_r(const BigFloat& x, const BigFloat& y, const BigFloat& z);

// min of the applicable bounds on x / R(x,y,z):
//   100 (1+x) (1 + e^(z/2) e^(-(x+y)/2))           always
//   500 + 500 x/(x+y-z)                            when x + y > z
BigFloat x_over_r_bound(const BigFloat& x, const BigFloat& y, const BigFloat& z);

// Number bound for interior pants-bounding geodesics of length <= L in an
// S_{1,2} (or S_{0,4}) with boundary lengths L1, L2:  L1 / R(L1, L2, L).
BigFloat count_bound_pants_neighbors(const BigFloat& L1, const BigFloat& L2, const BigFloat& L);

}  // namespace wpstat
