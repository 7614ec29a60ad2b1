#pragma once

#include <string>
#include <vector>

#include "ultraslow/io.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow {

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

/// One acceptance check. `measured` is the worst value over all weights and sample
/// points; the check passes when measured <= tolerance (or the stated comparison).
struct CheckResult {
    int id = 0;
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    bool advisory = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    double tol_scale = 1.0;
    bool hard_asymptotics = false;
};

inline constexpr int kCheckCount = 14;

/// Run check `id` (1..14) over the given weights.
CheckResult run_check(int id, const std::vector<Weight>& weights, const VerifyOptions& opts);
std::vector<CheckResult> run_checks(const std::vector<Weight>& weights, const VerifyOptions& opts,
                                    const std::vector<int>& ids = {});

/// True if some check failed that is not advisory.
bool has_hard_failure(const std::vector<CheckResult>& results);
/// "[PASS] 2 ...: measured ... (tolerance ...)".
std::string format_line(const CheckResult& r);
json report_json(const std::vector<CheckResult>& results, const std::vector<Weight>& weights,
                 const VerifyOptions& opts);

/// The two reference weights: mu = 1 and mu(alpha) = alpha.
std::vector<Weight> reference_weights();

}  // namespace ultraslow
