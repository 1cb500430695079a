#ifndef CNETS_CLI_HPP
#define CNETS_CLI_HPP

#include <string>
#include <vector>

#include "cnets/io.hpp"

namespace cnets::cli {

/// Exit-code contract: 0 = property holds / success, 1 = property fails
/// (witness in the report), 2 = input or resource error.
struct RunResult {
    int exit_code = 0;
    io::json report;
    std::string text;
};

RunResult run(const std::vector<std::string>& args);

int main_entry(int argc, char** argv);

} // namespace cnets::cli

#endif
