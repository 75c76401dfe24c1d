#pragma once

// Expected counting functions of separating multi-geodesics under the
// Weil-Petersson probability measure, via the integration formula
//     E[N_Gamma(X,L)] = 2^(-M)/|Sym| * 1/V_g *
//                       int_{sum x_i <= L} prod_pieces V(x) * prod x_i dx.
//
// Exact mode integrates the polynomial integrand in closed form (Dirichlet
// formula on the simplex).  Asymptotic mode evaluates the large-genus leading
// monomial of the same integral after replacing each large complement factor
// by its sinh point value and volume ratios by the exact-factorial form of
// the large-genus leading term; the unquantified corrections are named in
// the result note.

#include "wpstat/exppoly.hpp"
#include "wpstat/vol_asymptotics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wpstat {

enum class EvalMode { exact, asymptotic };

struct TopologySplit {
    long long g = 0;                            // ambient genus
    int g0 = 0, n0 = 0;                         // split-off piece
    std::vector<std::pair<long long, int>> complement;  // [(g_i, n_i)], curves assigned in order
    int one_handle_count = 0;                   // M
    Integer sym_order = 1;                      // |Sym|

    // The generic two-piece split S_{g0,k} u S_{g-g0-k+1,k}: M = 1 iff
    // (g0,k) = (1,1), |Sym| = k!.
    static TopologySplit two_piece(long long g, int g0, int k);
    void validate() const;
};

struct ExpectationResult {
    BigFloat value;
    EvalMode mode = EvalMode::exact;
    BigFloat leading_term;
    std::string note;
};

// omega(g) choices satisfying omega -> inf, omega/loglog g -> 0.
enum class OmegaChoice { sqrt_loglog, logloglog };

struct ThresholdProfile {
    OmegaChoice omega = OmegaChoice::sqrt_loglog;
    int sign = -1;  // +1 or -1
    long long g = 0;
};

BigFloat omega_value(OmegaChoice choice, long long g);
// 2 log g - 4 loglog g + sign * omega(g); requires g >= 3.
BigFloat threshold_L(const ThresholdProfile& profile);
// L^2 e^(L/2) / g; requires g >= 2.
BigFloat scaling_diagnostic(long long g, const BigFloat& L);

class ExpectationEngine {
public:
    ExpectationEngine(VolumeTable& volumes, BigFloat alpha_for_products)
        : volumes_(volumes), alpha_(std::move(alpha_for_products)) {}
    explicit ExpectationEngine(VolumeTable& volumes)
        : ExpectationEngine(volumes, conjectured_alpha()) {}

    VolumeTable& volumes() { return volumes_; }

    ExpectationResult expected_count(const TopologySplit& split, const BigFloat& L, EvalMode mode);

    // Leading terms of E[N_{1,1}] and E[N_{0,3}].
    BigFloat leading_n11(long long g, const BigFloat& L) const;
    BigFloat leading_n03(long long g, const BigFloat& L) const;

    // Sum of expected counts over all two-piece splits with |chi| = m.
    BigFloat sum_expected_chi_eq_m(long long g, const BigFloat& L, int m, EvalMode mode);
    // Explicit upper bound for the tail sum over |chi| >= m.
    BigFloat sum_expected_chi_ge_m(long long g, const BigFloat& L, int m);

    // Upper bound on Prob(L_1 <= L(g)) at the minus threshold.
    BigFloat prob_upper_L1(const ThresholdProfile& profile);

    // E[Y]: ordered pairs of disjoint one-handle curves, each of length <= L
    // (product domain [0,L]^2, prefactor 2^(-2)).
    ExpectationResult expected_pair_disjoint(long long g, const BigFloat& L, EvalMode mode);

    // Upper bound for the hat (handles = 1) and dot (handles = 2) counting
    // functions of a multicurve splitting off S_{g0,k}, with the handle
    // curve(s) bounded by L1 and the multicurve by L2.
    BigFloat expected_hat_count(const TopologySplit& split, const BigFloat& L1, const BigFloat& L2,
                                int handles);

    struct ZStarBounds {
        BigFloat z1;
        BigFloat z2;
    };
    ZStarBounds z_star_bounds(long long g, const BigFloat& L);

    // Three-term upper bound on Prob(N*_{1,1} = 0) at the plus threshold,
    // with leading-term surrogates; correction magnitudes are reported.
    struct ProbNoShortHandle {
        BigFloat total;
        BigFloat inv_expectation;     // 1/E[N*] surrogate
        BigFloat variance_proxy;      // reported correction magnitudes
        BigFloat z_over_n_sq;         // O(1/L) surrogate
        std::string note;
    };
    ProbNoShortHandle prob_no_short_handle_bound(const ThresholdProfile& profile);

    // chi cap for prob_upper_L1 (paper decomposition: m <= 10, tail at 11).
    int chi_cap = 10;

private:
    // V-ratio prod_i V(complement_i) / V_g: exact within budget in exact
    // mode, exact-factorial leading form otherwise.
    BigFloat complement_ratio_asym(const TopologySplit& split) const;
    BigFloat exact_integral(const TopologySplit& split, const BigFloat& L) const;
    // Leading monomial sum_{|alpha| = d0} C_alpha prod(2 alpha_i)! *
    // 2 L^(2d0+k-1) e^(L/2) / (2d0+k-1)! of the sinh-point integral.
    std::optional<BigFloat> leading_monomial_T(int g0, int k, const BigFloat& L);
    // Crude per-split bound (e^(x/2) sandwich): 1/k! L^(2k)/(2k)! e^L.
    BigFloat crude_split_bound(long long g, int g0, int k, const BigFloat& L) const;
    // V_{g0,k} V_{g',k} / V_g with exact small factors where affordable.
    BigFloat pair_ratio(long long g, long long g0, int k) const;

    VolumeTable& volumes_;
    BigFloat alpha_;
};

}  // namespace wpstat
