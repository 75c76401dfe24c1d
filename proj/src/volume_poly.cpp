#include "wpstat/volume_poly.hpp"

#include <algorithm>

namespace wpstat {

void VolumePoly::add(const MultiIndex& alpha, const QPiNumber& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

const QPiNumber* VolumePoly::find(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? nullptr : &it->second;
}

QPiNumber VolumePoly::value_at_zero() const {
    const QPiNumber* c = find(MultiIndex(n_, 0));
    return c ? *c : QPiNumber();
}

QPiNumber VolumePoly::substitute_squares(const std::vector<QPiNumber>& squares) const {
    QPiNumber acc;
    for (const auto& [alpha, c] : coeffs_) {
        QPiNumber term = c;
        for (int i = 0; i < n_; ++i)
            for (unsigned p = 0; p < alpha[i]; ++p) term *= squares[i];
        acc += term;
    }
    return acc;
}

BigFloat VolumePoly::eval_here(std::span<const BigFloat> x) const {
    std::vector<BigFloat> sq(n_);
    for (int i = 0; i < n_; ++i) sq[i] = x[i] * x[i];
    BigFloat acc = 0;
    for (const auto& [alpha, c] : coeffs_) {
        BigFloat term = c.eval_here();
        for (int i = 0; i < n_; ++i)
            for (unsigned p = 0; p < alpha[i]; ++p) term *= sq[i];
        acc += term;
    }
    return acc;
}

VolumePoly::Compiled VolumePoly::compile() const {
    Compiled c;
    c.n = n_;
    c.terms.reserve(coeffs_.size());
    for (const auto& [alpha, q] : coeffs_) c.terms.emplace_back(alpha, q.eval_here());
    return c;
}

BigFloat VolumePoly::Compiled::eval(std::span<const BigFloat> x) const {
    // per-variable power tables of x_i^2
    std::vector<std::vector<BigFloat>> pows(n);
    for (int i = 0; i < n; ++i) {
        unsigned maxe = 0;
        for (const auto& [alpha, c] : terms) maxe = std::max<unsigned>(maxe, alpha[i]);
        pows[i].resize(maxe + 1);
        pows[i][0] = 1;
        BigFloat sq = x[i] * x[i];
        for (unsigned e = 1; e <= maxe; ++e) pows[i][e] = pows[i][e - 1] * sq;
    }
    BigFloat acc = 0;
    for (const auto& [alpha, c] : terms) {
        BigFloat t = c;
        for (int i = 0; i < n; ++i)
            if (alpha[i]) t *= pows[i][alpha[i]];
        acc += t;
    }
    return acc;
}

bool VolumePoly::check_degree_bound() const {
    const int d = degree_bound();
    for (const auto& [alpha, c] : coeffs_) {
        long total = 0;
        for (auto a : alpha) total += a;
        if (total > d) return false;
    }
    return true;
}

bool VolumePoly::check_pi_power_pattern() const {
    const int d = degree_bound();
    for (const auto& [alpha, c] : coeffs_) {
        long total = 0;
        for (auto a : alpha) total += a;
        if (!c.is_positive_multiple_of_pi_power(static_cast<unsigned>(2 * (d - total))) ||
            c.is_zero())
            return false;
    }
    return true;
}

bool VolumePoly::check_symmetry() const {
    for (const auto& [alpha, c] : coeffs_) {
        MultiIndex sorted = alpha;
        std::sort(sorted.begin(), sorted.end());
        // compare against the coefficient of the sorted representative
        const QPiNumber* rep = find(sorted);
        if (!rep || !(*rep == c)) return false;
    }
    return true;
}

}  // namespace wpstat
