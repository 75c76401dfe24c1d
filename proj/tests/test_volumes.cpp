#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpstat/volumes.hpp"

#include "support.hpp"

#include <map>

using namespace wpstat;

namespace {

ScopedPrecision g_prec(60);

QPiNumber q(long num, long den, unsigned k) { return QPiNumber(Rational(num, den), k); }

VolumeTable& table() {
    static VolumeTable t(14);
    return t;
}

// Exact derivative identity V'_{g,n+1}(.., 2 pi i) = 2 pi i (2g-2+n) V_{g,n}:
// with only even powers present this stays in Q[pi].  Returns the polynomial
// sum_alpha c_alpha * 2 a_last * (-4 pi^2)^(a_last - 1) x^(2 alpha') and
// compares against factor * V_{g,n}.
bool dilaton_identity_holds(const VolumePoly& big, const VolumePoly& small, const Rational& factor) {
    const int n = small.boundaries();
    std::map<MultiIndex, QPiNumber> reduced;
    const QPiNumber minus4pi2(Rational(-4), 2);
    for (const auto& [alpha, c] : big.coeffs()) {
        const unsigned last = alpha[n];
        if (last == 0) continue;
        QPiNumber term = c;
        term.mul_rational(Rational(2 * last));
        for (unsigned p = 1; p < last; ++p) term *= minus4pi2;
        MultiIndex rest(alpha.begin(), alpha.begin() + n);
        auto [it, inserted] = reduced.emplace(rest, term);
        if (!inserted) it->second += term;
    }
    for (auto it = reduced.begin(); it != reduced.end();) {
        if (it->second.is_zero())
            it = reduced.erase(it);
        else
            ++it;
    }
    std::map<MultiIndex, QPiNumber> expected;
    for (const auto& [alpha, c] : small.coeffs()) {
        QPiNumber v = c;
        v.mul_rational(factor);
        expected.emplace(alpha, v);
    }
    return reduced == expected;
}

}  // namespace

TEST_CASE("base cases are exact") {
    const VolumePoly& v03 = table().polynomial(0, 3);
    REQUIRE(v03.coeffs().size() == 1);
    CHECK(*v03.find({0, 0, 0}) == QPiNumber(1));

    const VolumePoly& v11 = table().polynomial(1, 1);
    REQUIRE(v11.coeffs().size() == 2);
    CHECK(*v11.find({0}) == q(1, 6, 2));
    CHECK(*v11.find({1}) == q(1, 24, 0));
    CHECK(table().value(1, 1) == q(1, 6, 2));
}

TEST_CASE("V_{0,4} from the recursion") {
    const VolumePoly& v = table().polynomial(0, 4);
    CHECK(*v.find({0, 0, 0, 0}) == q(2, 1, 2));
    CHECK(*v.find({1, 0, 0, 0}) == q(1, 2, 0));
    CHECK(*v.find({0, 0, 0, 1}) == q(1, 2, 0));
    CHECK(v.coeffs().size() == 5);
}

TEST_CASE("V_{1,2} matches the known closed form") {
    // (4 pi^2 + x^2 + y^2)(12 pi^2 + x^2 + y^2)/192
    const VolumePoly& v = table().polynomial(1, 2);
    CHECK(*v.find({0, 0}) == q(1, 4, 4));
    CHECK(*v.find({1, 0}) == q(1, 12, 2));
    CHECK(*v.find({0, 1}) == q(1, 12, 2));
    CHECK(*v.find({2, 0}) == q(1, 192, 0));
    CHECK(*v.find({1, 1}) == q(1, 96, 0));
    CHECK(v.coeffs().size() == 6);
    CHECK(table().value(1, 2) == q(1, 4, 4));
}

TEST_CASE("V_{2,1} matches the known closed form") {
    const VolumePoly& v = table().polynomial(2, 1);
    CHECK(*v.find({0}) == q(29, 192, 8));
    CHECK(*v.find({1}) == q(169, 2880, 6));
    CHECK(*v.find({2}) == q(139, 23040, 4));
    CHECK(*v.find({3}) == q(29, 138240, 2));
    CHECK(*v.find({4}) == q(1, 442368, 0));
}

TEST_CASE("closed-surface volumes V_2, V_3, V_4") {
    CHECK(table().value(2, 0) == q(43, 2160, 6));
    CHECK(table().value(3, 0) == QPiNumber(Rational(176557, 1209600), 12));
    CHECK(table().value(4, 0) ==
          QPiNumber(Rational(Integer("1959225867017"), Integer("493807104000")), 18));
}

TEST_CASE("dilaton identities hold exactly across independent pairs") {
    auto& T = table();
    // V'_{g,n+1}(2 pi i) = 2 pi i (2g-2+n) V_{g,n}; the recursion never uses
    // this identity for n >= 1, so these are independent cross-checks.
    CHECK(dilaton_identity_holds(T.polynomial(0, 4), T.polynomial(0, 3), Rational(1)));
    CHECK(dilaton_identity_holds(T.polynomial(0, 5), T.polynomial(0, 4), Rational(2)));
    CHECK(dilaton_identity_holds(T.polynomial(0, 6), T.polynomial(0, 5), Rational(3)));
    CHECK(dilaton_identity_holds(T.polynomial(1, 3), T.polynomial(1, 2), Rational(2)));
    CHECK(dilaton_identity_holds(T.polynomial(1, 4), T.polynomial(1, 3), Rational(3)));
    CHECK(dilaton_identity_holds(T.polynomial(2, 2), T.polynomial(2, 1), Rational(3)));
    CHECK(dilaton_identity_holds(T.polynomial(3, 2), T.polynomial(3, 1), Rational(5)));
    // the V_{1,1} factor carries the elliptic-involution 1/2
    CHECK(dilaton_identity_holds(T.polynomial(1, 2), T.polynomial(1, 1), Rational(1, 2)));
}

TEST_CASE("kernel moment closed form vs numerical quadrature") {
    // F_{2k+1}(t) = int_0^inf u^(2k+1) H(u,t) du with
    // H(u,t) = 1/(1+e^((u+t)/2)) + 1/(1+e^((u-t)/2)).
    test::GaussLegendre gl(60);
    for (unsigned k = 0; k <= 3; ++k) {
        for (double td : {0.0, 1.0, 5.5}) {
            BigFloat t(td);
            auto integrand = [&](const BigFloat& u) {
                BigFloat p = pow(u, 2 * k + 1);
                return p * (1 / (1 + exp((u + t) / 2)) + 1 / (1 + exp((u - t) / 2)));
            };
            // panels out to u = 420; the tail beyond is < e^-200
            BigFloat numeric = 0;
            for (int seg = 0; seg < 42; ++seg)
                numeric += gl.integrate(BigFloat(10 * seg), BigFloat(10 * (seg + 1)), integrand);
            BigFloat closed_val = 0;
            for (unsigned i = 0; i <= k + 1; ++i)
                closed_val += kernel_moment_coeff(k, i).eval_here() * pow(t, 2 * (k + 1 - i));
            CHECK(abs(numeric - closed_val) <= abs(closed_val) * pow(BigFloat(10), -30));
        }
    }
}

TEST_CASE("structural invariants for a spread of (g,n)") {
    auto& T = table();
    for (auto [g, n] : {std::pair{0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2},
                        {2, 3}, {3, 1}, {3, 2}, {4, 1}}) {
        const VolumePoly& v = T.polynomial(g, n);
        CAPTURE(g);
        CAPTURE(n);
        CHECK(v.check_degree_bound());
        CHECK(v.check_pi_power_pattern());
        CHECK(v.check_symmetry());
    }
}

TEST_CASE("volume sandwich V <= V(x) <= e^(sum x/2) V on random lengths") {
    auto& T = table();
    test::Rng rng(2718);
    for (auto [g, n] : {std::pair{1, 1}, {0, 4}, {1, 2}, {2, 1}, {2, 2}, {1, 3}}) {
        const VolumePoly& v = T.polynomial(g, n);
        BigFloat v0 = v.value_at_zero().eval_here();
        for (int s = 0; s < 40; ++s) {
            std::vector<BigFloat> x(n);
            BigFloat sum = 0;
            for (int i = 0; i < n; ++i) {
                x[i] = BigFloat(rng.uniform(0.0, 10.0));
                sum += x[i];
            }
            BigFloat vx = v.eval_here(x);
            CHECK(v0 <= vx);
            CHECK(vx <= exp(sum / 2) * v0);
        }
    }
}

TEST_CASE("w_r selects the right volume") {
    CHECK(table().w_r(1) == q(1, 6, 2));
    CHECK(table().w_r(2) == q(43, 2160, 6));
    CHECK(table().w_r(3) == q(29, 192, 8));  // V_{2,1}
    CHECK_THROWS_AS(table().w_r(0), DomainError);
}

TEST_CASE("partition_volume_sum: constraint arithmetic") {
    auto& T = table();
    // r=2, one part with n=2: only g=1 admissible
    CHECK(T.partition_volume_sum(2, {2}) == T.value(1, 2));
    // r=4, parts (1,1): ordered (g1,g2) in {(1,2),(2,1)}
    QPiNumber expect = T.value(1, 1) * T.value(2, 1) + T.value(2, 1) * T.value(1, 1);
    CHECK(T.partition_volume_sum(4, {1, 1}) == expect);
    // no admissible tuple: r odd with all-even parity constraints
    CHECK(T.partition_volume_sum(3, {2}).is_zero());
    CHECK_THROWS_AS(T.partition_volume_sum(1, {1}), DomainError);
}

TEST_CASE("budget errors and stability domain errors") {
    VolumeTable small(3);
    CHECK_THROWS_AS(small.polynomial(2, 1), BudgetError);   // cost 4 > 3
    CHECK_THROWS_AS(small.polynomial(0, 2), DomainError);   // unstable
    CHECK_THROWS_AS(small.polynomial(-1, 5), DomainError);
    CHECK(small.polynomial(1, 1).coeffs().size() == 2);     // cost 1 fine
    // (5,0) has cost 12 and is admitted at the default budget even though its
    // internal V_{5,1} ingredient sits at 13
    VolumeTable def(kDefaultBudget);
    CHECK(def.value(5, 0) ==
          QPiNumber(Rational(Integer("84374265930915479"), Integer("355541114880000")), 24));
}

TEST_CASE("V_{1,5} <= V_{2,3} (chi-preserving comparison)") {
    BigFloat lhs = table().value(1, 5).eval_here();
    BigFloat rhs = table().value(2, 3).eval_here();
    CHECK(lhs <= rhs);
}

TEST_CASE("cache equals recomputation") {
    VolumeTable a(12), b(12);
    const VolumePoly& p1 = a.polynomial(2, 2);
    const VolumePoly& p2 = b.polynomial(2, 2);
    CHECK(p1.coeffs() == p2.coeffs());
}
