#pragma once

// Acceptance criteria as executable checks. Each returns pass/fail with the
// measured quantity next to its pinned tolerance.

#include "cavstat/closedform.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cavstat {

enum class ValidationLevel { Fast, Full };

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string measured;  // human-readable deltas
};

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::Fast;
    // Applied to the g2 coefficients before every closed-form g2 evaluation
    // (negative control: a tampered coefficient must fail criterion 3).
    std::function<void(G2Coefficients&)> g2_mutation;
    unsigned workers = 0;
};

// 1..6, 9, 10 for Fast; all ten for Full.
std::vector<int> criteria_for(ValidationLevel level);

CriterionResult run_criterion(int id, const ValidationOptions& options = {});
std::vector<CriterionResult> run_validation(const ValidationOptions& options = {});

// "PASS  3  g2 solver vs closed form: ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace cavstat
