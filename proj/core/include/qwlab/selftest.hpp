#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwlab {

struct SelfTestResult {
    std::string name;
    bool pass;
    std::string detail;
};

// The derived-oracle suite: every check an independent slow path can vouch for,
// small enough to run on every install. Returns one line per check.
std::vector<SelfTestResult> run_selftest();

// Prints "ok <name>" / "FAIL <name>: <detail>" lines; returns true iff all pass.
bool report_selftest(std::ostream& os, const std::vector<SelfTestResult>& results);

}
