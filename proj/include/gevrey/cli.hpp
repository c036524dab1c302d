#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace gevrey::cli {

struct CliResult {
    int exit_code = 0;            // 0 success/PASS, 1 mathematical FAIL, 2 usage
    nlohmann::json output;        // printed to stdout when non-null
    std::string diagnostics;      // printed to stderr
};

// Run one command line (without the program name).
CliResult run(const std::vector<std::string>& args);

int main_entry(int argc, char** argv);

}  // namespace gevrey::cli
