#pragma once

#include "io.hpp"

#include <cstdint>
#include <string>

namespace siegel::app {

struct JobConfig {
    std::string command;
    int genus = 1;
    int weight = 4;
    std::int64_t p = 0;  // 0: not given
    int a = -1;          // -1: not given
    int omega = 0;       // Nebentypus omega^omega for coeff
    std::string matrix;  // entries of 2T, "r1;r2;..."
    std::int64_t trace_bound = -1;
    int pprec = 12;
    int xprec = 8;
    std::string format = "table";
    int jobs = 1;
    std::string suite = "all";
};

struct CommandOutput {
    json doc;
    std::string table;
    int exit_code = 0;  // 0 ok, 1 a reported check failed
};

// Throws domain_error for bad configurations, scope_error/bound_error for
// requests outside what the library computes.
CommandOutput run_command(const JobConfig& cfg);

} // namespace siegel::app
