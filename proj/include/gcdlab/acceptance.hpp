#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gcdlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool within_budget = true;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
};

// Runs one acceptance criterion (1..11) or, with id = 0, all of them.
// on_result, when set, is invoked as each criterion finishes.
std::vector<CriterionResult> run_acceptance(
    int id = 0, int threads = 0,
    const std::function<void(const CriterionResult&)>& on_result = {});

// One line per criterion, pass/fail with timing and detail.
std::string format_criterion(const CriterionResult& r);

}  // namespace gcdlab
