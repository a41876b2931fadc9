#pragma once

// Acceptance-criteria runner shared by the dedicated test binary and the
// `acceptance` CLI subcommand. Each criterion prints one PASS/FAIL line;
// oracle-based criteria additionally emit OracleReport rows in the CSV
// schema quantity,main_value,oracle_value,rel_diff,method.

#include <iosfwd>
#include <string>
#include <vector>

#include "dce/oracle.hpp"

namespace dce::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    std::vector<oracle::OracleReport> reports;
    bool all_passed() const;
};

// Runs every criterion; scratch_dir holds the determinism-check outputs.
// Progress lines go to `out` as each criterion completes.
SuiteResult run_all(std::ostream& out, const std::string& scratch_dir);

// Pass/fail lines plus the oracle-report CSV block.
void write_report(const SuiteResult& result, std::ostream& out);

}  // namespace dce::acceptance
