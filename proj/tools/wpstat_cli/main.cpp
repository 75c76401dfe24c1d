// wpstat: exact and asymptotic Weil-Petersson moduli-space statistics.
//
// Subcommands:
//   volume      exact V_{g,n} polynomial / evaluation
//   expect      expected separating multi-geodesic counts
//   verify      per-lemma verification reports (pass / trend taxonomy)
//   thresholds  the large-genus threshold windows in one table
//
// Exit codes: 0 ok, 2 domain error, 3 budget error, 4 invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include "wpstat/expectations.hpp"
#include "wpstat/geometry.hpp"
#include "wpstat/mcshane.hpp"
#include "wpstat/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

struct RunConfig {
    unsigned precision = 50;
    int budget = wpstat::kDefaultBudget;
    std::string omega = "sqrtloglog";
    std::string format = "csv";
    std::string out;
    std::string mode = "exact";
    std::string cache_path;

    void validate() const {
        if (precision < wpstat::kMinPrecision) throw wpstat::DomainError("--precision must be >= 10");
        if (budget < 3) throw wpstat::DomainError("--budget must be >= 3");
        if (omega != "sqrtloglog" && omega != "logloglog")
            throw wpstat::DomainError("--omega must be sqrtloglog or logloglog");
        if (format != "csv" && format != "json")
            throw wpstat::DomainError("--format must be csv or json");
        if (mode != "exact" && mode != "asymptotic")
            throw wpstat::DomainError("--mode must be exact or asymptotic");
    }
    wpstat::OmegaChoice omega_choice() const {
        return omega == "sqrtloglog" ? wpstat::OmegaChoice::sqrt_loglog
                                     : wpstat::OmegaChoice::logloglog;
    }
    wpstat::EvalMode eval_mode() const {
        return mode == "exact" ? wpstat::EvalMode::exact : wpstat::EvalMode::asymptotic;
    }
};

std::ostream& open_output(const RunConfig& cfg, std::ofstream& file) {
    if (cfg.out.empty()) return std::cout;
    file.open(cfg.out);
    if (!file) throw wpstat::DomainError("cannot open output file " + cfg.out);
    return file;
}

std::string resolved_cache_path(const RunConfig& cfg) {
    if (!cfg.cache_path.empty()) return cfg.cache_path;
    if (const char* env = std::getenv("WPSTAT_CACHE")) return env;
    return {};
}

void maybe_load_cache(wpstat::VolumeTable& volumes, const RunConfig& cfg) {
    const std::string path = resolved_cache_path(cfg);
    if (path.empty()) return;
    if (!std::filesystem::exists(path)) return;
    if (auto warning = volumes.load_cache(path))
        std::cerr << "warning: " << *warning << "\n";
}

void maybe_save_cache(wpstat::VolumeTable& volumes, const RunConfig& cfg) {
    const std::string path = resolved_cache_path(cfg);
    if (path.empty()) return;
    if (!volumes.save_cache(path)) std::cerr << "warning: could not write cache " << path << "\n";
}

// parse "a:b" or single value into decade endpoints
std::pair<long long, long long> parse_sweep(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        const long long v = static_cast<long long>(std::stod(s));
        return {v, v};
    }
    return {static_cast<long long>(std::stod(s.substr(0, colon))),
            static_cast<long long>(std::stod(s.substr(colon + 1)))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wpstat: Weil-Petersson moduli-space statistics engine"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--precision", cfg.precision, "output precision in decimal digits (>= 10)");
    app.add_option("--budget", cfg.budget, "exact-mode budget K on 3g-3+n");
    app.add_option("--omega", cfg.omega, "omega choice: sqrtloglog | logloglog");
    app.add_option("--format", cfg.format, "output format: csv | json");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--cache", cfg.cache_path, "volume cache file (or env WPSTAT_CACHE)");

    // volume
    auto* vol = app.add_subcommand("volume", "exact volume polynomial V_{g,n}");
    int vg = 1, vn = 1;
    std::vector<double> vx;
    vol->add_option("--g", vg, "genus")->required();
    vol->add_option("--n", vn, "boundary count")->required();
    vol->add_option("--x", vx, "boundary lengths for numeric evaluation");

    // expect
    auto* exp_cmd = app.add_subcommand("expect", "expected separating multi-geodesic count");
    long long eg = 4;
    int eg0 = 1, ek = 1;
    double eL = 10.0;
    exp_cmd->add_option("--g", eg, "ambient genus")->required();
    exp_cmd->add_option("--g0", eg0, "split piece genus");
    exp_cmd->add_option("--k", ek, "number of curves (split piece boundaries)");
    exp_cmd->add_option("--L", eL, "total length bound")->required();
    exp_cmd->add_option("--mode", cfg.mode, "exact | asymptotic");

    // verify
    auto* ver = app.add_subcommand("verify", "run a per-lemma verifier");
    std::string lemma;
    std::string gsweep = "100:1000000";
    wpstat::VerifierOptions vopt;
    ver->add_option("lemma", lemma, "lemma id (see --list)")->required();
    ver->add_option("--g-sweep", gsweep, "genus sweep lo:hi (decade steps)");
    ver->add_option("--m", vopt.m, "chi magnitude m");
    ver->add_option("--r", vopt.r_lo, "r range start");
    ver->add_option("--r-hi", vopt.r_hi, "r range end");
    ver->add_option("--q", vopt.m, "(unused alias)")->group("");
    std::vector<int> parts = {1, 1};
    ver->add_option("--parts", parts, "boundary counts n_i for sum-vol");
    ver->add_option("--L", vopt.L, "fixed L for sweeps that need one");
    ver->add_option("--seed", vopt.seed, "grid seed");
    ver->add_option("--grid", vopt.grid, "grid size");

    auto* ver_list = app.add_subcommand("verify-list", "list verifier lemma ids");

    // thresholds
    auto* thr = app.add_subcommand("thresholds", "print the threshold windows at genus g");
    long long tg = 1000000;
    double teps = 0.1;
    double tC = wpstat::kDefaultL1SupConstant;
    thr->add_option("--g", tg, "genus")->required();
    thr->add_option("--eps", teps, "epsilon for the windows");
    thr->add_option("--C", tC, "constant for the sup L_1 bound (not paper-asserted)");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.validate();
        wpstat::ScopedPrecision guard(cfg.precision + wpstat::kGuardDigits);
        wpstat::VolumeTable volumes(cfg.budget);
        maybe_load_cache(volumes, cfg);
        std::ofstream file;

        if (*vol) {
            const wpstat::VolumePoly& poly = volumes.polynomial(vg, vn);
            std::ostream& os = open_output(cfg, file);
            if (cfg.format == "json") {
                nlohmann::json coeffs = nlohmann::json::array();
                for (const auto& [alpha, c] : poly.coeffs()) {
                    nlohmann::json idx = nlohmann::json::array();
                    for (auto a : alpha) idx.push_back(a);
                    coeffs.push_back({{"alpha", idx}, {"coeff", c.to_string()}});
                }
                nlohmann::json doc{{"g", vg}, {"n", vn}, {"coeffs", coeffs}};
                if (!vx.empty()) {
                    std::vector<wpstat::BigFloat> x(vx.begin(), vx.end());
                    doc["value_at_x"] =
                        wpstat::format_bigfloat(poly.eval_here(x), cfg.precision);
                }
                doc["value_at_zero"] =
                    wpstat::format_bigfloat(poly.value_at_zero().eval(cfg.precision), cfg.precision);
                os << doc.dump(2) << "\n";
            } else {
                os << "# V_{" << vg << "," << vn << "}; one coefficient per line\n";
                for (const auto& [alpha, c] : poly.coeffs()) {
                    for (auto a : alpha) os << a << " ";
                    os << "| " << c.to_string() << "\n";
                }
                os << "# value at zero: "
                   << wpstat::format_bigfloat(poly.value_at_zero().eval(cfg.precision),
                                              cfg.precision)
                   << "\n";
                if (!vx.empty()) {
                    std::vector<wpstat::BigFloat> x(vx.begin(), vx.end());
                    os << "# value at x: " << wpstat::format_bigfloat(poly.eval_here(x), cfg.precision)
                       << "\n";
                }
            }
            maybe_save_cache(volumes, cfg);
            return kExitOk;
        }

        if (*exp_cmd) {
            cfg.validate();
            wpstat::ExpectationEngine engine(volumes);
            auto split = wpstat::TopologySplit::two_piece(eg, eg0, ek);
            auto res = engine.expected_count(split, wpstat::BigFloat(eL), cfg.eval_mode());
            std::ostream& os = open_output(cfg, file);
            if (cfg.format == "json") {
                nlohmann::json doc{{"g", eg},
                                   {"g0", eg0},
                                   {"k", ek},
                                   {"L", eL},
                                   {"mode", cfg.mode},
                                   {"value", wpstat::format_bigfloat(res.value, cfg.precision)},
                                   {"leading", wpstat::format_bigfloat(res.leading_term, cfg.precision)},
                                   {"note", res.note}};
                os << doc.dump(2) << "\n";
            } else {
                os << "# wpstat-report v1 columns=g,L,mode,value,leading,ratio\n";
                os << "g,L,mode,value,leading,ratio\n";
                os << eg << "," << eL << "," << cfg.mode << ","
                   << wpstat::format_bigfloat(res.value, cfg.precision) << ","
                   << wpstat::format_bigfloat(res.leading_term, cfg.precision) << ","
                   << wpstat::format_bigfloat(res.value / res.leading_term, cfg.precision) << "\n";
                os << "# note: " << res.note << "\n";
            }
            maybe_save_cache(volumes, cfg);
            return kExitOk;
        }

        if (*ver_list) {
            for (const auto& id : wpstat::verifier_ids()) std::cout << id << "\n";
            return kExitOk;
        }

        if (*ver) {
            auto [lo, hi] = parse_sweep(gsweep);
            vopt.g_lo = lo;
            vopt.g_hi = hi;
            vopt.parts = parts;
            vopt.omega = cfg.omega_choice();
            vopt.mode = cfg.eval_mode();
            vopt.precision = cfg.precision;
            vopt.r_hi = std::max(vopt.r_hi, vopt.r_lo);
            auto report = wpstat::run_verifier(lemma, volumes, vopt);
            std::ostream& os = open_output(cfg, file);
            if (cfg.format == "json")
                report.write_json(os);
            else
                report.write_csv(os);
            maybe_save_cache(volumes, cfg);
            return report.hard_failure() ? kExitInvariant : kExitOk;
        }

        if (*thr) {
            if (teps <= 0) throw wpstat::DomainError("--eps must be positive");
            wpstat::BigFloat eps(teps);
            wpstat::ThresholdProfile plus{cfg.omega_choice(), +1, tg};
            wpstat::ThresholdProfile minus{cfg.omega_choice(), -1, tg};
            std::ostream& os = open_output(cfg, file);
            auto line = [&](const std::string& name, const wpstat::BigFloat& lo,
                            const wpstat::BigFloat& hi) {
                if (cfg.format == "csv")
                    os << name << "," << wpstat::format_bigfloat(lo, cfg.precision) << ","
                       << wpstat::format_bigfloat(hi, cfg.precision) << "\n";
            };
            if (cfg.format == "csv") {
                os << "# wpstat-report v1 columns=window,lower,upper\n";
                os << "window,lower,upper\n";
                line("separating-systole-threshold", wpstat::threshold_L(minus),
                     wpstat::threshold_L(plus));
                auto ext = wpstat::ext_systole_window(tg, eps);
                line("extremal-systole", ext.lower, ext.upper);
                auto h1 = wpstat::cheeger_h1_window(tg, eps);
                line("cheeger-h1", h1.lower, h1.upper);
                auto lam = wpstat::lambda1_ratio_window(tg, eps);
                line("lambda1-over-L1", lam.lower, lam.upper);
                line("half-collar-width", wpstat::half_collar_width_threshold(tg, eps),
                     wpstat::half_collar_width_threshold(tg, eps));
                line("sup-L1", wpstat::l1_sup_bound(tg, wpstat::BigFloat(tC)),
                     wpstat::l1_sup_bound(tg, wpstat::BigFloat(tC)));
            } else {
                nlohmann::json doc;
                auto put = [&](const std::string& name, const wpstat::BigFloat& lo,
                               const wpstat::BigFloat& hi) {
                    doc[name] = {{"lower", wpstat::format_bigfloat(lo, cfg.precision)},
                                 {"upper", wpstat::format_bigfloat(hi, cfg.precision)}};
                };
                put("separating_systole_threshold", wpstat::threshold_L(minus),
                    wpstat::threshold_L(plus));
                auto ext = wpstat::ext_systole_window(tg, eps);
                put("extremal_systole", ext.lower, ext.upper);
                auto h1 = wpstat::cheeger_h1_window(tg, eps);
                put("cheeger_h1", h1.lower, h1.upper);
                auto lam = wpstat::lambda1_ratio_window(tg, eps);
                put("lambda1_over_L1", lam.lower, lam.upper);
                put("half_collar_width", wpstat::half_collar_width_threshold(tg, eps),
                    wpstat::half_collar_width_threshold(tg, eps));
                put("sup_L1", wpstat::l1_sup_bound(tg, wpstat::BigFloat(tC)),
                    wpstat::l1_sup_bound(tg, wpstat::BigFloat(tC)));
                os << doc.dump(2) << "\n";
            }
            return kExitOk;
        }
    } catch (const wpstat::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const wpstat::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
