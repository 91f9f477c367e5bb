// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <cstdio>
#include <cstring>
#include <iostream>

#include "affst/verify.hpp"

int main(int argc, char** argv) {
    affst::VerifyOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (std::strcmp(argv[i], "--n") == 0 && i + 1 < argc)
            opts.resolution = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--workdir") == 0 && i + 1 < argc)
            opts.workdir = argv[++i];
    }
    affst::SuiteResult res;
    try {
        res = affst::verify_suite("acceptance", opts);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 2;
    }
    int failed = 0;
    for (const auto& c : res.checks) {
        std::printf("%s criterion %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        failed += c.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(res.checks.size()) - failed,
                res.checks.size());
    return failed == 0 ? 0 : 1;
}
