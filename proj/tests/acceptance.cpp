// Acceptance suite runner: executes every criterion at its stated range and
// prints one pass/fail line per criterion. Exits nonzero if any hard
// criterion fails.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "confhom/verify.hpp"

int main(int argc, char** argv) {
    confhom::VerifyOptions opt;
    opt.full = true;
    opt.threads = static_cast<int>(std::thread::hardware_concurrency());
    if (opt.threads <= 0) opt.threads = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) opt.full = false;
        if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            opt.threads = std::atoi(argv[++i]);
    }

    auto results = confhom::run_acceptance(opt);
    int failures = 0;
    for (const auto& r : results) {
        const char* tag = r.pass ? "PASS" : (r.hard ? "FAIL" : "WARN");
        std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", tag, r.id, r.name.c_str(), r.seconds,
                    r.detail.empty() ? "" : " -- ", r.detail.c_str());
        if (!r.pass && r.hard) ++failures;
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
