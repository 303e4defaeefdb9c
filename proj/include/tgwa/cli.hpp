#pragma once

#include "tgwa/config.hpp"
#include "tgwa/dot.hpp"
#include "tgwa/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tgwa {

struct CliOptions {
    std::string subcommand;
    std::string config_path;
    std::string out_path;   // empty = stdout
    std::string in_path;    // module JSON for verify
    std::string format = "text"; // text | json | dot
    long window = -1;       // -1 = config value
    bool use_oracle = false; // build via the generic induced construction
};

// exit codes: 0 pass, 2 verification failure, 3 config error, 4 mathematical
// precondition error
int run_cli(const CliOptions& opts, std::ostream& out, std::ostream& err);

} // namespace tgwa
