#include "wpstat/report.hpp"

#include "wpstat/mcshane.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace wpstat {

namespace {
constexpr unsigned kPrintDigits = 20;

std::string fmt(const BigFloat& v) { return format_bigfloat(v, kPrintDigits); }

std::vector<long long> decade_sweep(long long lo, long long hi) {
    std::vector<long long> gs;
    for (long long g = lo; g <= hi; g *= 10) gs.push_back(g);
    if (gs.empty()) gs.push_back(lo);
    return gs;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}
}  // namespace

std::string format_bigfloat(const BigFloat& v, unsigned digits) {
    return v.str(digits, std::ios_base::scientific);
}

bool VerifierReport::hard_failure() const {
    for (const auto& r : rows)
        if (r.verdict == "fail") return true;
    return false;
}

std::string VerifierReport::summary() const {
    if (hard_failure()) return "fail";
    for (const auto& r : rows)
        if (r.verdict == "trend") return "trend";
    return "pass";
}

void VerifierReport::write_csv(std::ostream& os) const {
    os << "# wpstat-report v1 columns=lemma,inputs,lhs,rhs,ratio,verdict\n";
    os << "lemma,inputs,lhs,rhs,ratio,verdict\n";
    for (const auto& r : rows)
        os << csv_quote(lemma_id) << "," << csv_quote(r.inputs) << "," << r.lhs << "," << r.rhs
           << "," << r.ratio << "," << r.verdict << "\n";
    os << "# summary," << summary() << "\n";
}

void VerifierReport::write_json(std::ostream& os) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"lemma", lemma_id},
                       {"inputs", r.inputs},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"ratio", r.ratio},
                       {"verdict", r.verdict}});
    nlohmann::json doc{{"report_version", 1},
                       {"lemma", lemma_id},
                       {"summary", summary()},
                       {"rows", arr}};
    os << doc.dump(2) << "\n";
}

const std::vector<std::string>& verifier_ids() {
    static const std::vector<std::string> ids = {
        "E[N]",        "E[Y]",       "Z*",          "sum-chi-eq-m",     "sum-chi-ge-m",
        "prob-L1",     "prob-N*=0",  "vol-sandwich", "sinh-upper",      "vol-ratios",
        "sum-vol",     "wr-prop",    "mcshane-monotone", "x-over-r",    "collar-identity",
        "maskit",      "chi-union"};
    return ids;
}

namespace {

VerifierReport verify_en(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"E[N]", {}};
    ExpectationEngine engine(volumes);
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        ThresholdProfile prof{opt.omega, -1, g};
        BigFloat L = threshold_L(prof);
        auto r11 = engine.expected_count(TopologySplit::two_piece(g, 1, 1), L, EvalMode::asymptotic);
        auto r03 = engine.expected_count(TopologySplit::two_piece(g, 0, 3), L, EvalMode::asymptotic);
        rep.rows.push_back({"split=(1,1) g=" + std::to_string(g), fmt(r11.value),
                            fmt(r11.leading_term), fmt(r11.value / r11.leading_term), "trend"});
        rep.rows.push_back({"split=(0,3) g=" + std::to_string(g), fmt(r03.value),
                            fmt(r03.leading_term), fmt(r03.value / r03.leading_term), "trend"});
    }
    return rep;
}

VerifierReport verify_ey(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"E[Y]", {}};
    ExpectationEngine engine(volumes);
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        ThresholdProfile prof{opt.omega, -1, g};
        BigFloat L = threshold_L(prof);
        auto y = engine.expected_pair_disjoint(g, L, EvalMode::asymptotic);
        BigFloat l2 = engine.leading_n11(g, L);
        rep.rows.push_back({"g=" + std::to_string(g), fmt(y.value), fmt(l2 * l2),
                            fmt(y.value / (l2 * l2)), "trend"});
    }
    return rep;
}

VerifierReport verify_zstar(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"Z*", {}};
    ExpectationEngine engine(volumes);
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        ThresholdProfile prof{opt.omega, +1, g};
        BigFloat L = threshold_L(prof);
        auto z = engine.z_star_bounds(g, L);
        BigFloat n1 = z.z1 * BigFloat(g) * BigFloat(g) / (pow(L, 6) * exp(BigFloat("0.95") * L));
        BigFloat n2 = z.z2 * BigFloat(g) * BigFloat(g) / (pow(L, 3) * exp(L));
        rep.rows.push_back({"z1 g=" + std::to_string(g), fmt(z.z1), fmt(n1), fmt(n1), "trend"});
        rep.rows.push_back({"z2 g=" + std::to_string(g), fmt(z.z2), fmt(n2), fmt(n2), "trend"});
    }
    // branch constant on the 1.9L < x+y <= 2L shell: x/R <= 2000 (paper-fixed)
    {
        DetRand rng(opt.seed);
        BigFloat L(20);
        bool ok = true;
        BigFloat worst = 0;
        for (int i = 0; i < opt.grid; ++i) {
            BigFloat s = BigFloat(rng.uniform(1.9001, 2.0)) * L;
            BigFloat x = BigFloat(rng.uniform(1e-6, 1.0)) * s;
            if (x > 2 * L) continue;
            BigFloat y = s - x;
            if (y <= 0) continue;
            BigFloat v = x / mcshane_r(x, y, L);
            if (v > worst) worst = v;
            if (v > 2000) ok = false;
        }
        rep.rows.push_back({"branch-constant shell grid", fmt(worst), fmt(BigFloat(2000)),
                            fmt(worst / 2000), ok ? "pass" : "fail"});
    }
    return rep;
}

VerifierReport verify_sum_chi_eq(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"sum-chi-eq-m", {}};
    ExpectationEngine engine(volumes);
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        BigFloat L = log(BigFloat(g));
        BigFloat v = engine.sum_expected_chi_eq_m(g, L, opt.m, EvalMode::asymptotic);
        BigFloat norm = v * pow(BigFloat(g), opt.m) /
                        ((1 + pow(L, 3 * opt.m - 1)) * exp(L / 2));
        rep.rows.push_back({"g=" + std::to_string(g) + " m=" + std::to_string(opt.m), fmt(v),
                            fmt(norm), fmt(norm), "trend"});
    }
    return rep;
}

VerifierReport verify_sum_chi_ge(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"sum-chi-ge-m", {}};
    ExpectationEngine engine(volumes);
    // paper inequality sum_k 1/k! L^(2k)/(2k)! <= e^L  (pass rows)
    for (double Ld : {1.0, 5.0, 10.0, 20.0}) {
        BigFloat L(Ld);
        BigFloat s = 0;
        for (int k = 1; k <= 200; ++k) {
            BigFloat t = pow(L, 2 * k) / to_bigfloat(Rational(factorial(k) * factorial(2 * k)));
            s += t;
            if (t < s * BigFloat(1e-45)) break;
        }
        rep.rows.push_back({"series L=" + std::to_string(Ld), fmt(s), fmt(exp(L)), fmt(s / exp(L)),
                            s <= exp(L) ? "pass" : "fail"});
    }
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        BigFloat L(opt.L);
        BigFloat v = engine.sum_expected_chi_ge_m(g, L, opt.m);
        rep.rows.push_back({"g=" + std::to_string(g) + " m=" + std::to_string(opt.m) +
                                " L=" + std::to_string(opt.L),
                            fmt(v), fmt(v * pow(BigFloat(g), opt.m)),
                            fmt(v * pow(BigFloat(g), opt.m)), "trend"});
    }
    return rep;
}

VerifierReport verify_prob_l1(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"prob-L1", {}};
    ExpectationEngine engine(volumes);
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        ThresholdProfile prof{opt.omega, -1, g};
        BigFloat v = engine.prob_upper_L1(prof);
        BigFloat m1 = engine.leading_n11(g, threshold_L(prof)) +
                      engine.leading_n03(g, threshold_L(prof));
        rep.rows.push_back({"g=" + std::to_string(g), fmt(v), fmt(m1), fmt(m1 / v), "trend"});
    }
    return rep;
}

VerifierReport verify_prob_nstar(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"prob-N*=0", {}};
    ExpectationEngine engine(volumes);
    for (long long g : decade_sweep(opt.g_lo, opt.g_hi)) {
        if (g < 3) continue;
        ThresholdProfile prof{opt.omega, +1, g};
        auto b = engine.prob_no_short_handle_bound(prof);
        rep.rows.push_back({"g=" + std::to_string(g), fmt(b.total), fmt(b.inv_expectation),
                            fmt(b.z_over_n_sq), "trend"});
    }
    return rep;
}

VerifierReport verify_vol_sandwich(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"vol-sandwich", {}};
    DetRand rng(opt.seed);
    for (auto [g, n] : volumes.cached_keys()) {
        if (n < 1) continue;
        const VolumePoly& poly = volumes.polynomial(g, n);
        BigFloat v0 = poly.value_at_zero().eval_here();
        bool ok = true;
        const int samples = 100;
        for (int s = 0; s < samples; ++s) {
            std::vector<BigFloat> x(n);
            BigFloat sum = 0;
            for (int i = 0; i < n; ++i) {
                x[i] = BigFloat(rng.uniform(0.0, 10.0));
                sum += x[i];
            }
            BigFloat vx = poly.eval_here(x);
            if (!(v0 <= vx && vx <= exp(sum / 2) * v0)) ok = false;
        }
        rep.rows.push_back({"(g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ") x100",
                            fmt(v0), fmt(v0), "1", ok ? "pass" : "fail"});
    }
    return rep;
}

VerifierReport verify_sinh_upper(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"sinh-upper", {}};
    DetRand rng(opt.seed);
    const BigFloat tol = pow(BigFloat(10), 5 - static_cast<int>(opt.precision));
    for (auto [g, n] : volumes.cached_keys()) {
        if (n < 1) continue;
        const VolumePoly& poly = volumes.polynomial(g, n);
        bool ok = true;
        const int samples = 100;
        for (int s = 0; s < samples; ++s) {
            std::vector<BigFloat> x(n);
            for (int i = 0; i < n; ++i) x[i] = BigFloat(rng.uniform(0.0, 10.0));
            BigFloat vx = poly.eval_here(x);
            BigFloat bound = sinh_upper_bound(volumes, g, n, x).bound;
            if (vx > bound * (1 + tol)) ok = false;
        }
        rep.rows.push_back({"(g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ") x100",
                            "", "", "", ok ? "pass" : "fail"});
    }
    return rep;
}

VerifierReport verify_vol_ratios(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"vol-ratios", {}};
    BigFloat fourpisq = 4 * const_pi() * const_pi();
    const int g_top = static_cast<int>(std::min<long long>(opt.g_hi, (volumes.budget() + 2) / 3));
    for (int n = 0; n <= 1; ++n) {
        for (int g = std::max<long long>(2, opt.g_lo); g <= g_top; ++g) {
            if (3 * g - 3 + n + 1 > volumes.budget()) break;
            BigFloat num = volumes.value(g, n + 1).eval_here();
            BigFloat den = BigFloat(2 * g - 2 + n) * volumes.value(g, n).eval_here();
            rep.rows.push_back({"V_{g,n+1}/((2g-2+n)V_{g,n}) g=" + std::to_string(g) +
                                    " n=" + std::to_string(n),
                                fmt(num), fmt(den), fmt(num / den), "trend"});
        }
    }
    for (int g = std::max<long long>(2, opt.g_lo); g <= g_top; ++g) {
        if (3 * g - 2 > volumes.budget()) break;
        BigFloat ratio = volumes.value(g, 1).eval_here() /
                         (BigFloat(2 * g) * volumes.value(g, 0).eval_here());
        rep.rows.push_back({"V_{g,1}/(2g V_g) vs 4pi^2, g=" + std::to_string(g), fmt(ratio),
                            fmt(fourpisq), fmt(ratio / fourpisq), "trend"});
    }
    // exact comparisons V_{g-1,n+4} <= V_{g,n+2} for structurally small pairs
    for (int g = 1; g <= g_top; ++g) {
        for (int n = 0; n <= 4; ++n) {
            if (!stable_surface(g - 1, n + 4)) continue;
            if (3 * (g - 1) - 3 + n + 4 > volumes.budget() || 3 * g - 3 + n + 2 > volumes.budget())
                continue;
            const int d_small = 3 * (g - 1) - 3 + (n + 4);
            if (binomial(static_cast<unsigned>(n + 4 + d_small), static_cast<unsigned>(n + 4)) >
                30000)
                continue;
            BigFloat lhs = volumes.value(g - 1, n + 4).eval_here();
            BigFloat rhs = volumes.value(g, n + 2).eval_here();
            rep.rows.push_back({"V_{g-1,n+4}<=V_{g,n+2} g=" + std::to_string(g) +
                                    " n=" + std::to_string(n),
                                fmt(lhs), fmt(rhs), fmt(lhs / rhs), lhs <= rhs ? "pass" : "fail"});
        }
    }
    return rep;
}

VerifierReport verify_sum_vol(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"sum-vol", {}};
    BigFloat prev = -1;
    for (int r = opt.r_lo; r <= opt.r_hi; ++r) {
        BigFloat lhs = volumes.partition_volume_sum(r, opt.parts).eval_here();
        BigFloat wr = volumes.w_r(r).eval_here();
        BigFloat ratio = lhs / wr;
        std::string verdict = "trend";
        rep.rows.push_back({"r=" + std::to_string(r) + " q=" + std::to_string(opt.parts.size()),
                            fmt(lhs), fmt(wr), fmt(ratio), verdict});
        prev = ratio;
    }
    return rep;
}

VerifierReport verify_wr_prop(VolumeTable& volumes, const VerifierOptions& opt) {
    VerifierReport rep{"wr-prop", {}};
    const int m0 = std::max(1, opt.m);
    for (int r = opt.r_lo; r <= opt.r_hi; ++r) {
        if (m0 > r / 2) continue;
        BigFloat s = 0;
        for (int m = m0; m <= r / 2; ++m)
            s += volumes.w_r(m).eval_here() * volumes.w_r(r - m).eval_here();
        BigFloat wr = volumes.w_r(r).eval_here();
        BigFloat norm = s * pow(BigFloat(r), m0) / wr;
        rep.rows.push_back({"r=" + std::to_string(r) + " m0=" + std::to_string(m0), fmt(s), fmt(wr),
                            fmt(norm), "trend"});
    }
    return rep;
}

VerifierReport verify_mcshane_monotone(VolumeTable&, const VerifierOptions& opt) {
    VerifierReport rep{"mcshane-monotone", {}};
    DetRand rng(opt.seed);
    const BigFloat h("1e-3");
    bool pos_ok = true, mono_ok = true, d2x_ok = true;
    for (int i = 0; i < opt.grid; ++i) {
        BigFloat x(rng.uniform(0.01, 20.0)), y(rng.uniform(0.01, 20.0)), z(rng.uniform(0.01, 20.0));
        BigFloat d = mcshane_d(x, y, z), r = mcshane_r(x, y, z);
        if (!(d > 0 && r > 0)) pos_ok = false;
        if (!(mcshane_r(x, y, z + h) <= r)) mono_ok = false;          // R decreasing in z
        if (!(mcshane_r(x, y + h, z) >= r)) mono_ok = false;          // R increasing in y
        if (!(mcshane_d(x, y + h, z) <= d)) mono_ok = false;          // D decreasing in y
        if (!(mcshane_d(x, y, z + h) <= d)) mono_ok = false;          // D decreasing in z
        if (!(mcshane_d(x + h, y, z) >= d)) mono_ok = false;          // D increasing in x
        if (!(d < 2 * x)) d2x_ok = false;                             // D < 2x
    }
    rep.rows.push_back({"positivity grid", "", "", "", pos_ok ? "pass" : "fail"});
    rep.rows.push_back({"monotonicity grid", "", "", "", mono_ok ? "pass" : "fail"});
    rep.rows.push_back({"D<2x grid", "", "", "", d2x_ok ? "pass" : "fail"});
    return rep;
}

VerifierReport verify_x_over_r(VolumeTable&, const VerifierOptions& opt) {
    VerifierReport rep{"x-over-r", {}};
    DetRand rng(opt.seed);
    const BigFloat tol = pow(BigFloat(10), 5 - static_cast<int>(opt.precision));
    bool ok = true;
    BigFloat worst = 0;
    for (int i = 0; i < opt.grid; ++i) {
        BigFloat x(rng.uniform(0.01, 20.0)), y(rng.uniform(0.01, 20.0)), z(rng.uniform(0.01, 20.0));
        BigFloat lhs = x / mcshane_r(x, y, z);
        BigFloat bound = x_over_r_bound(x, y, z);
        if (lhs > bound * (1 + tol)) ok = false;
        if (lhs / bound > worst) worst = lhs / bound;
    }
    rep.rows.push_back({"x/R grid", fmt(worst), "1", fmt(worst), ok ? "pass" : "fail"});
    return rep;
}

VerifierReport verify_collar_identity(VolumeTable&, const VerifierOptions& opt) {
    VerifierReport rep{"collar-identity", {}};
    const BigFloat tol = pow(BigFloat(10), 5 - static_cast<int>(opt.precision));
    bool ok = true;
    BigFloat worst = 0;
    const int npts = std::max(2, opt.grid);
    for (int i = 0; i < npts; ++i) {
        BigFloat w = BigFloat(20) * i / (npts - 1);
        BigFloat a = collar_theta(w), b = collar_theta_via_cos(w);
        BigFloat diff = abs(a - b);
        if (diff > worst) worst = diff;
        if (diff > tol) ok = false;
        BigFloat back = collar_width(a);
        if (abs(back - w) > tol * (1 + w)) ok = false;
    }
    rep.rows.push_back(
        {"theta identity + round-trip, w in [0,20]", fmt(worst), fmt(tol), "", ok ? "pass" : "fail"});
    return rep;
}

VerifierReport verify_maskit(VolumeTable&, const VerifierOptions& opt) {
    VerifierReport rep{"maskit", {}};
    BigFloat prev = -1;
    bool mono = true, above2 = true;
    for (double w : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        Window win = maskit_window(BigFloat(1), BigFloat(w));
        BigFloat ratio = win.upper / win.lower;
        if (ratio <= 2) above2 = false;
        if (prev > 0 && ratio > prev) mono = false;
        prev = ratio;
        rep.rows.push_back({"w=" + std::to_string(w), fmt(win.lower), fmt(win.upper), fmt(ratio),
                            "trend"});
    }
    rep.rows.push_back({"ratio > 2 and decreasing toward 2", "", "", "",
                        (mono && above2) ? "pass" : "fail"});
    (void)opt;
    return rep;
}

VerifierReport verify_chi_union(VolumeTable&, const VerifierOptions& opt) {
    VerifierReport rep{"chi-union", {}};
    {
        Window w = chi_union_bounds(1, 1, BigFloat(0), BigFloat(0));
        rep.rows.push_back({"chi=(1,1) l=(0,0)", fmt(w.lower), fmt(w.upper), "",
                            (w.lower == 2 && w.upper == 2) ? "pass" : "fail"});
    }
    {
        BigFloat L(opt.L);
        Window w = chi_union_bounds(1, 1, L, L);
        BigFloat cap = L / const_pi() + 2;
        rep.rows.push_back({"one-handle case l1=l2=L", fmt(w.lower), fmt(w.upper), fmt(cap),
                            (w.lower >= 2 && w.upper <= cap) ? "pass" : "fail"});
    }
    {
        BigFloat twopi = 2 * const_pi();
        Window w = chi_union_bounds(1, 3, twopi, twopi);
        rep.rows.push_back({"chi=(1,3) l=(2pi,2pi)", fmt(w.lower), fmt(w.upper), "",
                            (w.lower == 4 && w.upper == 6) ? "pass" : "fail"});
    }
    DetRand rng(opt.seed);
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
        long c1 = 1 + static_cast<long>(rng.uniform(0, 6)), c2 = 1 + static_cast<long>(rng.uniform(0, 6));
        Window w = chi_union_bounds(c1, c2, BigFloat(rng.uniform(0, 30)), BigFloat(rng.uniform(0, 30)));
        if (!(w.lower >= 1 + std::max(c1, c2))) ok = false;
    }
    rep.rows.push_back({"lower >= 1+max grid", "", "", "", ok ? "pass" : "fail"});
    return rep;
}

}  // namespace

VerifierReport run_verifier(const std::string& lemma_id, VolumeTable& volumes,
                            const VerifierOptions& opt) {
    if (lemma_id == "E[N]") return verify_en(volumes, opt);
    if (lemma_id == "E[Y]") return verify_ey(volumes, opt);
    if (lemma_id == "Z*") return verify_zstar(volumes, opt);
    if (lemma_id == "sum-chi-eq-m") return verify_sum_chi_eq(volumes, opt);
    if (lemma_id == "sum-chi-ge-m") return verify_sum_chi_ge(volumes, opt);
    if (lemma_id == "prob-L1") return verify_prob_l1(volumes, opt);
    if (lemma_id == "prob-N*=0") return verify_prob_nstar(volumes, opt);
    if (lemma_id == "vol-sandwich") return verify_vol_sandwich(volumes, opt);
    if (lemma_id == "sinh-upper") return verify_sinh_upper(volumes, opt);
    if (lemma_id == "vol-ratios") return verify_vol_ratios(volumes, opt);
    if (lemma_id == "sum-vol") return verify_sum_vol(volumes, opt);
    if (lemma_id == "wr-prop") return verify_wr_prop(volumes, opt);
    if (lemma_id == "mcshane-monotone") return verify_mcshane_monotone(volumes, opt);
    if (lemma_id == "x-over-r") return verify_x_over_r(volumes, opt);
    if (lemma_id == "collar-identity") return verify_collar_identity(volumes, opt);
    if (lemma_id == "maskit") return verify_maskit(volumes, opt);
    if (lemma_id == "chi-union") return verify_chi_union(volumes, opt);
    throw DomainError("unknown verifier lemma id: " + lemma_id);
}

}  // namespace wpstat
