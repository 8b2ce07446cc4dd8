#pragma once
// Acceptance suite: one check per criterion, tolerances fixed below.

#include <string>
#include <vector>

#include "json.hpp"

namespace framedrep::acceptance {

inline constexpr double kFlatnessTol = 1e-8;
inline constexpr double kSingularProjectionTol = 1e-9;
inline constexpr double kRoundTripTol = 1e-8;
inline constexpr double kContractibleTol = 1e-7;
inline constexpr double kRelationTol = 1e-5;
inline constexpr int kCriteria = 9;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

CriterionResult run_criterion(int id);
// Empty ids runs every criterion.
std::vector<CriterionResult> run(const std::vector<int>& ids = {});

std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace framedrep::acceptance
