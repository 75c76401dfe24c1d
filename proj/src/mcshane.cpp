#include "wpstat/mcshane.hpp"

namespace wpstat {

namespace {
void require_positive(const BigFloat& x, const BigFloat& y, const BigFloat& z) {
    if (x <= 0 || y <= 0 || z <= 0)
        throw DomainError("McShane kernels require x, y, z > 0");
}
}  // namespace

BigFloat mcshane_d(const BigFloat& x, const BigFloat& y, const BigFloat& z) {
    require_positive(x, y, z);
    BigFloat eyz = exp((y + z) / 2);
    return 2 * log((exp(x / 2) + eyz) / (exp(-x / 2) + eyz));
}

BigFloat mcshane_r(const BigFloat& x, const BigFloat& y, const BigFloat& z) {
    require_positive(x, y, z);
    BigFloat cy = cosh(y / 2);
    return x - log((cy + cosh((x + z) / 2)) / (cy + cosh((x - z) / 2)));
}

BigFloat x_over_r_bound(const BigFloat& x, const BigFloat& y, const BigFloat& z) {
    require_positive(x, y, z);
    BigFloat b = 100 * (1 + x) * (1 + exp(z / 2) * exp(-(x + y) / 2));
    if (x + y > z) {
        BigFloat b2 = 500 + 500 * x / (x + y - z);
        if (b2 < b) return b2;
    }
    return b;
}

BigFloat count_bound_pants_neighbors(const BigFloat& L1, const BigFloat& L2, const BigFloat& L) {
    return L1 / mcshane_r(L1, L2, L);
}

}  // namespace wpstat
