#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptzinspect::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kIo = 3,
    kParse = 4,
    kSetup = 5,
};

// Runs the ptzinspect command line. args excludes the program name.
// Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptzinspect::cli
