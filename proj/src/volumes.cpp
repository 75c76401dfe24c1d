#include "wpstat/volumes.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

namespace wpstat {

namespace {

// h_0 = 1; h_i = zeta(2i) * (2^(2i+1) - 4) for i >= 1.
QPiNumber kernel_h(unsigned i) {
    if (i == 0) return QPiNumber(1);
    QPiNumber z = zeta_even(i);
    return z.mul_rational(Rational((Integer(1) << (2 * i + 1)) - 4));
}

Rational beta_moment(unsigned a, unsigned b) {
    // int_0^u x^(2a+1) (u-x)^(2b+1) dx = B(2a+2, 2b+2) u^(2a+2b+3)
    return Rational(factorial(2 * a + 1) * factorial(2 * b + 1)) /
           Rational(factorial(2 * a + 2 * b + 3));
}

}  // namespace

QPiNumber kernel_moment_coeff(unsigned k, unsigned i) {
    QPiNumber h = kernel_h(i);
    return h.mul_rational(Rational(factorial(2 * k + 1)) /
                          Rational(factorial(2 * k + 2 - 2 * i)));
}

VolumeTable::VolumeTable(int budget) : budget_(budget) {
    if (budget_ < 3) throw DomainError("volume budget must be at least 3");
}

const VolumePoly* VolumeTable::lookup(int g, int n) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find({g, n});
    return it == table_.end() ? nullptr : &it->second;
}

const VolumePoly& VolumeTable::store(int g, int n, VolumePoly poly) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.emplace(std::make_pair(g, n), std::move(poly));
    return it->second;  // first writer wins; results are identical by determinism
}

const VolumePoly& VolumeTable::polynomial(int g, int n) {
    if (!stable_surface(g, n))
        throw DomainError("V_{g,n} requires 2g-2+n >= 1 and g,n >= 0");
    if (3 * g - 3 + n > budget_)
        throw BudgetError("V_{" + std::to_string(g) + "," + std::to_string(n) +
                          "} exceeds the exact-mode budget 3g-3+n <= " + std::to_string(budget_) +
                          "; raise the budget or use asymptotic mode");
    if (const VolumePoly* hit = lookup(g, n)) return *hit;
    return store(g, n, compute(g, n));
}

const VolumePoly& VolumeTable::polynomial_nolimit(int g, int n) {
    if (!stable_surface(g, n))
        throw DomainError("V_{g,n} requires 2g-2+n >= 1 and g,n >= 0");
    if (const VolumePoly* hit = lookup(g, n)) return *hit;
    return store(g, n, compute(g, n));
}

QPiNumber VolumeTable::value(int g, int n) { return polynomial(g, n).value_at_zero(); }

QPiNumber VolumeTable::w_r(int r) {
    if (r < 1) throw DomainError("W_r requires r >= 1");
    return r % 2 == 0 ? value(r / 2 + 1, 0) : value((r + 1) / 2, 1);
}

QPiNumber VolumeTable::partition_volume_sum(int r, const std::vector<int>& parts) {
    if (r < 2) throw DomainError("partition_volume_sum requires r >= 2");
    for (int n : parts)
        if (n < 0) throw DomainError("partition_volume_sum: negative boundary count");
    QPiNumber total;
    // enumerate chi magnitudes m_i >= 1 with m_i = 2g_i-2+n_i, sum m_i = r
    const int q = static_cast<int>(parts.size());
    std::vector<int> m(q, 0);
    auto rec = [&](auto&& self, int idx, int remaining) -> void {
        if (idx == q - 1) {
            m[idx] = remaining;
            // each m must give integral g_i = (m_i + 2 - n_i)/2 >= 0
            QPiNumber prod(1);
            for (int i = 0; i < q; ++i) {
                const int mi = m[i], ni = parts[i];
                if (mi < 1 || (mi + 2 - ni) % 2 != 0 || mi + 2 - ni < 0) return;
                prod *= value((mi + 2 - ni) / 2, ni);
            }
            total += prod;
            return;
        }
        for (int v = 1; v <= remaining - (q - 1 - idx); ++v) {
            m[idx] = v;
            self(self, idx + 1, remaining - v);
        }
    };
    if (q >= 1) rec(rec, 0, r);
    return total;
}

VolumePoly VolumeTable::closed_surface_from_dilaton(int g) {
    // V_{g,0} = (sum_k 2k c_k (-4 pi^2)^(k-1)) / (2g-2), c_k from V_{g,1}.
    // The (g,0) request was budget-checked; its V_{g,1} ingredient sits one
    // step beyond 3g-3 and is cheap (single boundary), so it is exempt.
    const VolumePoly& vg1 = polynomial_nolimit(g, 1);
    QPiNumber minus_four_pi_sq = QPiNumber(Rational(-4), 2);
    QPiNumber acc;
    for (const auto& [alpha, c] : vg1.coeffs()) {
        const unsigned k = alpha[0];
        if (k == 0) continue;
        QPiNumber term = c;
        term.mul_rational(Rational(2 * k));
        for (unsigned p = 1; p < k; ++p) term *= minus_four_pi_sq;
        acc += term;
    }
    acc.mul_rational(Rational(1, 2 * g - 2));
    VolumePoly out(g, 0);
    out.add(MultiIndex{}, acc);
    return out;
}

VolumePoly VolumeTable::compute(int g, int n) {
    if (g == 0 && n == 3) {
        VolumePoly v(0, 3);
        v.add(MultiIndex{0, 0, 0}, QPiNumber(1));
        return v;
    }
    if (g == 1 && n == 1) {
        VolumePoly v(1, 1);
        v.add(MultiIndex{0}, QPiNumber(Rational(1, 6), 2));
        v.add(MultiIndex{1}, QPiNumber(Rational(1, 24)));
        return v;
    }
    if (n == 0) return closed_surface_from_dilaton(g);

    // d(L1 * V)/dL1 accumulated as a polynomial in L1^2, L2^2, ..., Ln^2.
    std::map<MultiIndex, QPiNumber> deriv;
    auto add_deriv = [&](const MultiIndex& idx, const QPiNumber& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = deriv.emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) deriv.erase(it);
        }
    };
    const Rational half(1, 2);

    // Non-separating term: pants bounded by L1 and two interior curves whose
    // complement is connected of type (g-1, n+1).
    if (g >= 1 && stable_surface(g - 1, n + 1)) {
        const VolumePoly& w = polynomial(g - 1, n + 1);
        for (const auto& [beta, c] : w.coeffs()) {
            const unsigned a = beta[0], b = beta[1];
            const unsigned k = a + b + 1;
            const Rational bm = beta_moment(a, b) * half;
            MultiIndex idx(n, 0);
            for (int s = 1; s < n; ++s) idx[s] = beta[s + 1];
            for (unsigned i = 0; i <= k + 1; ++i) {
                QPiNumber term = kernel_moment_coeff(k, i) * c;
                term.mul_rational(bm);
                idx[0] = static_cast<std::uint16_t>(k + 1 - i);
                add_deriv(idx, term);
            }
        }
    }

    // Separating term: the complement splits into an ordered pair of stable
    // pieces.  A factor of type (1,1) enters with weight 1/2 (elliptic
    // involution), so that the published V_{1,1} = (x^2+4pi^2)/24 can be used
    // throughout.
    for (int g1 = 0; g1 <= g; ++g1) {
        const int g2 = g - g1;
        const unsigned rest = static_cast<unsigned>(n - 1);
        for (unsigned mask = 0; mask < (1u << rest); ++mask) {
            std::vector<int> slots1, slots2;
            for (unsigned bit = 0; bit < rest; ++bit)
                ((mask >> bit) & 1u ? slots1 : slots2).push_back(static_cast<int>(bit) + 1);
            const int n1 = static_cast<int>(slots1.size()) + 1;
            const int n2 = static_cast<int>(slots2.size()) + 1;
            if (!stable_surface(g1, n1) || !stable_surface(g2, n2)) continue;
            Rational weight = half;
            if (g1 == 1 && n1 == 1) weight *= half;
            if (g2 == 1 && n2 == 1) weight *= half;
            const VolumePoly& p1 = polynomial(g1, n1);
            const VolumePoly& p2 = polynomial(g2, n2);
            for (const auto& [b1, c1] : p1.coeffs()) {
                const unsigned a = b1[0];
                for (const auto& [b2, c2] : p2.coeffs()) {
                    const unsigned b = b2[0];
                    const unsigned k = a + b + 1;
                    const Rational bm = beta_moment(a, b) * weight;
                    MultiIndex idx(n, 0);
                    for (size_t t = 0; t < slots1.size(); ++t) idx[slots1[t]] = b1[t + 1];
                    for (size_t t = 0; t < slots2.size(); ++t) idx[slots2[t]] = b2[t + 1];
                    QPiNumber prod = c1 * c2;
                    for (unsigned i = 0; i <= k + 1; ++i) {
                        QPiNumber term = kernel_moment_coeff(k, i) * prod;
                        term.mul_rational(bm);
                        idx[0] = static_cast<std::uint16_t>(k + 1 - i);
                        add_deriv(idx, term);
                    }
                }
            }
        }
    }

    // Boundary-pairing term: pants bounded by L1, Lj and one interior curve.
    if (n >= 2 && stable_surface(g, n - 1)) {
        const VolumePoly& p = polynomial(g, n - 1);
        Rational weight(1);
        if (g == 1 && n - 1 == 1) weight = half;
        for (int j = 1; j < n; ++j) {
            for (const auto& [beta, c] : p.coeffs()) {
                const unsigned a = beta[0];
                MultiIndex idx(n, 0);
                {
                    size_t t = 1;
                    for (int s = 1; s < n; ++s) {
                        if (s == j) continue;
                        idx[s] = beta[t++];
                    }
                }
                for (unsigned i = 0; i <= a + 1; ++i) {
                    const unsigned m = a + 1 - i;
                    QPiNumber base = kernel_moment_coeff(a, i) * c;
                    base.mul_rational(weight);
                    for (unsigned e = 0; e <= m; ++e) {
                        QPiNumber term = base;
                        term.mul_rational(Rational(binomial(2 * m, 2 * e)));
                        idx[0] = static_cast<std::uint16_t>(m - e);
                        idx[j] = static_cast<std::uint16_t>(e);
                        add_deriv(idx, term);
                    }
                    idx[j] = 0;
                }
            }
        }
    }

    VolumePoly out(g, n);
    for (auto& [idx, c] : deriv) {
        QPiNumber v = c;
        v.mul_rational(Rational(1, 2 * idx[0] + 1));
        out.add(idx, v);
    }
    return out;
}

std::vector<std::pair<int, int>> VolumeTable::cached_keys() const {
    std::shared_lock lock(mutex_);
    std::vector<std::pair<int, int>> keys;
    keys.reserve(table_.size());
    for (const auto& [key, poly] : table_) keys.push_back(key);
    return keys;
}

bool VolumeTable::save_cache(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) return false;
    out << "# wpstat-volume-cache v1 K=" << budget_ << "\n";
    std::shared_lock lock(mutex_);
    for (const auto& [key, poly] : table_) {
        for (const auto& [alpha, c] : poly.coeffs()) {
            out << key.first << " " << key.second;
            for (auto a : alpha) out << " " << a;
            out << " | " << c.to_string() << "\n";
        }
        if (poly.coeffs().empty())
            out << key.first << " " << key.second << " |empty\n";
    }
    return static_cast<bool>(out);
}

std::optional<std::string> VolumeTable::load_cache(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return "cache file not readable: " + path.string();
    std::string header;
    std::getline(in, header);
    if (header.rfind("# wpstat-volume-cache v1 ", 0) != 0)
        return "cache header mismatch, ignoring " + path.string();

    std::map<std::pair<int, int>, VolumePoly> loaded;
    std::string line;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream is(line);
        int g = 0, n = -1;
        if (!(is >> g >> n) || !stable_surface(g, n))
            return "cache corrupt at line " + std::to_string(lineno) + ", ignoring";
        auto [it, ignored] = loaded.try_emplace({g, n}, VolumePoly(g, n));
        std::string tok;
        is >> tok;
        if (tok == "|empty") continue;
        MultiIndex alpha;
        bool saw_bar = false;
        while (true) {
            if (tok == "|") {
                saw_bar = true;
                break;
            }
            try {
                alpha.push_back(static_cast<std::uint16_t>(std::stoul(tok)));
            } catch (...) {
                return "cache corrupt at line " + std::to_string(lineno) + ", ignoring";
            }
            if (!(is >> tok)) break;
        }
        std::string qpi;
        if (!saw_bar || !(is >> qpi) || static_cast<int>(alpha.size()) != n)
            return "cache corrupt at line " + std::to_string(lineno) + ", ignoring";
        try {
            it->second.add(alpha, QPiNumber::parse(qpi));
        } catch (const std::exception&) {
            return "cache corrupt at line " + std::to_string(lineno) + ", ignoring";
        }
    }
    for (const auto& [key, poly] : loaded) {
        if (!poly.check_degree_bound() || !poly.check_pi_power_pattern() || !poly.check_symmetry())
            return "cache entry V_{" + std::to_string(key.first) + "," +
                   std::to_string(key.second) + "} violates invariants, ignoring";
    }
    std::unique_lock lock(mutex_);
    for (auto& [key, poly] : loaded) table_.insert_or_assign(key, std::move(poly));
    return std::nullopt;
}

}  // namespace wpstat
