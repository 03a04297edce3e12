#pragma once

#include <string>
#include <vector>

#include "lvhopf/config.hpp"

namespace lvhopf {

enum class CriterionStatus { Pass, Fail, Skip };

struct CriterionResult {
    int id = 0;
    std::string name;
    CriterionStatus status = CriterionStatus::Skip;
    std::string detail;
};

/// Runs the full acceptance suite at the given configuration: analytic
/// identities, oracle cross-checks, simulation witnesses, determinism.
/// An infeasible model short-circuits every criterion to Skip.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg);

/// True iff every criterion passed (skips count as failures for the exit
/// code; a skipped suite reports infeasibility separately).
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace lvhopf
