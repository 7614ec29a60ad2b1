// Acceptance suite: one line per criterion over both reference weights.
// Exit status is non-zero when any non-advisory check fails.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ultraslow/verify.hpp"

using namespace ultraslow;

int main(int argc, char** argv) {
    VerifyOptions opts;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--hard-asymptotics") == 0) opts.hard_asymptotics = true;
    const auto weights = reference_weights();
    std::vector<CheckResult> results;
    int failed = 0, advisory = 0;
    for (int id = 1; id <= kCheckCount; ++id) {
        results.push_back(run_check(id, weights, opts));
        const auto& r = results.back();
        std::printf("%s\n", format_line(r).c_str());
        std::fflush(stdout);
        if (r.status == CheckStatus::Fail) ++(r.advisory ? advisory : failed);
    }
    std::printf("acceptance: %d hard failure(s), %d advisory failure(s)\n", failed, advisory);
    return has_hard_failure(results) ? EXIT_FAILURE : EXIT_SUCCESS;
}
