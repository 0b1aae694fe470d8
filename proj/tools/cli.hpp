#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homforge::cli {

enum Exit : int {
    yes = 0,
    no = 1,
    usage = 2,
    inconclusive = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace homforge::cli
