#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affst {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int resolution = 101;   // main grid resolution
    std::string workdir;    // scratch dir for pipeline artifacts (default: temp)
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

/// Suites: fenchel, sphere, cosmo, deform, determinism, and acceptance (all
/// twelve criteria in order, one check per criterion).
std::vector<std::string> verify_suite_names();
SuiteResult verify_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace affst
