#pragma once

// VolumePoly: the Weil-Petersson volume V_{g,n}(x_1,...,x_n) as an exact
// polynomial in the squared boundary lengths, with QPiNumber coefficients.
// Multi-indices are stored explicitly for every permutation, so polynomial
// equality is map equality and the symmetry invariant is checkable.

#include "wpstat/qpi.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace wpstat {

using MultiIndex = std::vector<std::uint16_t>;

class VolumePoly {
public:
    VolumePoly() = default;
    VolumePoly(int g, int n) : g_(g), n_(n) {}

    int genus() const { return g_; }
    int boundaries() const { return n_; }
    int degree_bound() const { return 3 * g_ - 3 + n_; }

    const std::map<MultiIndex, QPiNumber>& coeffs() const { return coeffs_; }

    void add(const MultiIndex& alpha, const QPiNumber& c);
    const QPiNumber* find(const MultiIndex& alpha) const;

    // V_{g,n}(0,...,0).
    QPiNumber value_at_zero() const;

    // Exact substitution of x_i^2 -> s_i for rational s_i (used by the
    // dilaton-identity computation with s = -4*pi^2, where the result stays
    // inside Q[pi]).
    QPiNumber substitute_squares(const std::vector<QPiNumber>& squares) const;

    // Numeric evaluation at nonnegative lengths, at the current working
    // precision.
    BigFloat eval_here(std::span<const BigFloat> x) const;

    // One-time numeric compilation for evaluation-heavy loops (quadrature
    // oracles, sampling): coefficients are converted to BigFloat once.
    struct Compiled {
        int n = 0;
        std::vector<std::pair<MultiIndex, BigFloat>> terms;
        BigFloat eval(std::span<const BigFloat> x) const;
    };
    Compiled compile() const;

    // Structural invariants from the polynomiality theorem:
    //   |alpha| <= 3g-3+n, every C_alpha a positive rational multiple of
    //   pi^(6g-6+2n-2|alpha|), and symmetry under variable permutations.
    bool check_degree_bound() const;
    bool check_pi_power_pattern() const;
    bool check_symmetry() const;

private:
    int g_ = 0, n_ = 0;
    std::map<MultiIndex, QPiNumber> coeffs_;
};

}  // namespace wpstat
