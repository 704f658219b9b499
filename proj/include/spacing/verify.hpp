#pragma once

#include <string>
#include <vector>

namespace spacing {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    /// Measured value and threshold, human readable.
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    unsigned threads = 1;
    /// Restrict to these criterion ids; empty runs all.
    std::vector<int> only;
};

/// Cross-route acceptance checks 1..13.
std::vector<CriterionResult> run_verification(const VerifyOptions& opt = {});

/// "[PASS] 1 name: detail (0.12 s)".
std::string format_result(const CriterionResult& r);

}  // namespace spacing
