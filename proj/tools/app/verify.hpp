#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace siegel::app {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    std::int64_t p = 5;
    int a = 2;
    int M = 12;
    int N = 8;
    int jobs = 1;
};

// Suites: local, stab, satake, lambda, all.
std::vector<CheckLine> run_suite(const std::string& suite, const VerifyOptions& opt);

} // namespace siegel::app
