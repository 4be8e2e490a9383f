#pragma once

// Command-line front end: solve-dde, first-zero, sieve-verify,
// density-report, bound, identity-check, fetch.

#include <iosfwd>
#include <string>
#include <vector>

namespace ramanujan::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1, // ran, but a checked property did not hold
    kUsage = 2,
    kDataGap = 3,
    kResource = 4,
    kNetwork = 5,
};

// args excludes the program name.  Results go to `out` (or the --out file),
// errors to `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ramanujan::cli
