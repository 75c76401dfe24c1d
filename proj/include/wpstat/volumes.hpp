#pragma once

// Exact Weil-Petersson volume polynomials via the topological recursion on
// (g,n), memoized in a table with optional text-file persistence.
//
// Closed surfaces (n = 0) are obtained from V_{g,1} through the exact
// derivative identity V'_{g,1}(2*pi*i) = 2*pi*i * (2g-2) * V_{g,0}, which
// stays inside Q[pi] because only even powers are involved.

#include "wpstat/volume_poly.hpp"

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace wpstat {

inline constexpr int kDefaultBudget = 12;

inline bool stable_surface(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n >= 1; }

// Coefficient of t^(2(k+1-i)) in F_{2k+1}(t) = int_0^inf u^(2k+1) H(u,t) du,
// where H(u,t) = 1/(1+e^((u+t)/2)) + 1/(1+e^((u-t)/2)).  Exact in Q[pi].
QPiNumber kernel_moment_coeff(unsigned k, unsigned i);

class VolumeTable {
public:
    explicit VolumeTable(int budget = kDefaultBudget);

    int budget() const { return budget_; }

    // Exact V_{g,n}; throws BudgetError when 3g-3+n exceeds the budget and
    // DomainError for non-stable (g,n).  Thread-safe; duplicated concurrent
    // computation of the same entry is allowed and resolves to one copy.
    const VolumePoly& polynomial(int g, int n);

    // Budget-exempt access for structurally small pieces needed inside the
    // asymptotic evaluators (their size is capped by the chi decomposition,
    // not by the user's exact-mode budget).
    const VolumePoly& polynomial_nolimit(int g, int n);

    // V_{g,n}(0,...,0).
    QPiNumber value(int g, int n);

    // W_r = V_{r/2+1} (r even) or V_{(r+1)/2,1} (r odd); r >= 1.
    QPiNumber w_r(int r);

    // Sum over {g_i} with 2g_i-2+n_i >= 1 and sum (2g_i-2+n_i) = r of
    // prod V_{g_i,n_i}; exact.
    QPiNumber partition_volume_sum(int r, const std::vector<int>& parts);

    std::vector<std::pair<int, int>> cached_keys() const;

    // Line-oriented text persistence.  A malformed or invariant-violating
    // file is discarded entirely; the warning (if any) is returned.
    bool save_cache(const std::filesystem::path& path) const;
    std::optional<std::string> load_cache(const std::filesystem::path& path);

private:
    const VolumePoly* lookup(int g, int n) const;
    const VolumePoly& store(int g, int n, VolumePoly poly);
    VolumePoly compute(int g, int n);
    VolumePoly closed_surface_from_dilaton(int g);

    int budget_;
    mutable std::shared_mutex mutex_;
    std::map<std::pair<int, int>, VolumePoly> table_;
};

}  // namespace wpstat
