#pragma once

// Verifier reports: one row per checked instance, with a verdict taxonomy
// that keeps the artifact honest.  "pass"/"fail" are reserved for
// inequalities whose constants are pinned down (sandwich bounds, the 2000
// branch constant, trigonometric identities, integer chi bounds); rows that
// track unknown universal constants only ever report "trend".

#include "wpstat/expectations.hpp"
#include "wpstat/geometry.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wpstat {

std::string format_bigfloat(const BigFloat& v, unsigned digits);

struct ReportRow {
    std::string inputs;
    std::string lhs;
    std::string rhs;
    std::string ratio;
    std::string verdict;  // pass | fail | trend
};

struct VerifierReport {
    std::string lemma_id;
    std::vector<ReportRow> rows;

    bool hard_failure() const;
    std::string summary() const;  // "pass", "trend", or "fail"
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

struct VerifierOptions {
    long long g_lo = 100;
    long long g_hi = 1000000;
    int m = 2;
    int r_lo = 4;
    int r_hi = 10;
    std::vector<int> parts = {1, 1};
    double eps = 0.1;
    double L = 10.0;
    OmegaChoice omega = OmegaChoice::sqrt_loglog;
    EvalMode mode = EvalMode::asymptotic;
    unsigned seed = 20240801;
    int grid = 1000;
    unsigned precision = 50;
};

// Deterministic pseudo-random doubles in [0,1) (xorshift64*), so reports are
// byte-identical across platforms and runs.
class DetRand {
public:
    explicit DetRand(unsigned seed) : state_(0x9E3779B97F4A7C15ull ^ (seed * 0x2545F4914F6CDD1Dull)) {
        if (state_ == 0) state_ = 1;
    }
    double next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        const unsigned long long r = state_ * 0x2545F4914F6CDD1Dull;
        return static_cast<double>(r >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    unsigned long long state_;
};

const std::vector<std::string>& verifier_ids();
VerifierReport run_verifier(const std::string& lemma_id, VolumeTable& volumes,
                            const VerifierOptions& opt);

}  // namespace wpstat
