#pragma once

#include <string>
#include <vector>

namespace qpdec {

struct check_line {
    std::string name;
    bool pass{false};
    bool gating{true};  // informational lines never fail the run
    std::string detail;
};

// calibration + oracle battery behind the `selfcheck` CLI subcommand
std::vector<check_line> run_selfcheck();

bool selfcheck_passed(const std::vector<check_line>& lines);

}
