#pragma once

#include "lhvlab/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lhv {

struct VerifyOptions {
    std::uint64_t seed = 42;
    unsigned threads = 0;
    /// Negative control: run every erasure model with the constant keep weight.
    bool corrupt_erasure_weight = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  ///< measured values, 6 significant digits
};

/// Pinned tolerances of the acceptance criteria.
namespace tolerance {
inline constexpr double kSingletCurve = 0.01;
inline constexpr double kEfficiency = 0.005;
inline constexpr double kSinglesRatio = 0.02;
inline constexpr double kPatternFraction = 0.005;
inline constexpr double kChshLinear = 0.01;
inline constexpr double kChshErasure = 0.02;
inline constexpr double kThreshold = 0.001;
inline constexpr double kThresholdReference = 0.8283;
inline constexpr double kCoincidentFraction = 0.003;
inline constexpr double kSlotBalance = 0.006;
inline constexpr double kVisibility = 0.01;
inline constexpr double kSlowResidual = 0.02;
inline constexpr double kFastSigmas = 10.0;
inline constexpr double kNoncoplanarCircleMin = 0.1;
inline constexpr double kNoncoplanarSphereMax = 0.01;
inline constexpr std::uint64_t kLocalityTrials = 10'000;
inline constexpr double kMarginalSigmas = 4.0;
}  // namespace tolerance

/// Runs all twelve criteria at full scale.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

bool all_passed(const std::vector<CriterionResult>& results);

Json to_json(const std::vector<CriterionResult>& results, const VerifyOptions& opts);
/// One "PASS/FAIL  [id] name: detail" line per criterion.
std::string render_table(const std::vector<CriterionResult>& results);

}  // namespace lhv
