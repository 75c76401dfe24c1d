#pragma once

// Shared test helpers: a deterministic RNG and an iterated Gauss-Legendre
// quadrature oracle.  The oracle is independent of the closed-form
// integration paths it checks: nodes and weights come from Newton iteration
// on the Legendre recurrence, and tensor GL is exact for polynomials up to
// degree 2n-1, so polynomial integrands are reproduced to rounding error.

#include "wpstat/numeric.hpp"

#include <functional>
#include <vector>

namespace wpstat::test {

class Rng {
public:
    explicit Rng(unsigned long long seed) : s_(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    double uniform(double lo, double hi) {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return lo + (hi - lo) * static_cast<double>((s_ * 0x2545F4914F6CDD1Dull) >> 11) * 0x1.0p-53;
    }

private:
    unsigned long long s_;
};

struct GaussLegendre {
    std::vector<BigFloat> nodes;    // on [-1, 1]
    std::vector<BigFloat> weights;

    explicit GaussLegendre(int n) {
        BigFloat pi = const_pi();
        for (int i = 0; i < n; ++i) {
            // Chebyshev initial guess, then Newton on P_n
            BigFloat x = -cos(pi * (4 * i + 3) / (4 * n + 2));
            for (int it = 0; it < 200; ++it) {
                auto [p, dp] = legendre(n, x);
                BigFloat dx = p / dp;
                x -= dx;
                if (abs(dx) < pow(BigFloat(10), -static_cast<int>(BigFloat::default_precision()) + 4))
                    break;
            }
            auto [p, dp] = legendre(n, x);
            nodes.push_back(x);
            weights.push_back(2 / ((1 - x * x) * dp * dp));
        }
    }

    // integral over [a, b]
    BigFloat integrate(const BigFloat& a, const BigFloat& b,
                       const std::function<BigFloat(const BigFloat&)>& f) const {
        BigFloat mid = (a + b) / 2, half = (b - a) / 2, acc = 0;
        for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + half * nodes[i]);
        return acc * half;
    }

private:
    static std::pair<BigFloat, BigFloat> legendre(int n, const BigFloat& x) {
        BigFloat p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            BigFloat p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        BigFloat dp = n * (x * p1 - p0) / (x * x - 1);
        return {p1, dp};
    }
};

}  // namespace wpstat::test
