#pragma once

#include <cstddef>
#include <cstdint>

/// Every physical and solver default in one place. The CLI reads these for
/// its flag defaults; README mirrors this table.
namespace triwave::defaults {

// Model
inline constexpr double kExponent = 2.0;
inline constexpr double kAlpha = 1.0;
inline constexpr double kBeta = 1.0;

// Grid
inline constexpr double kHalfLength = 40.0;
inline constexpr std::size_t kPoints = 1024;

// Ground-state flow
inline constexpr double kFlowTimeStep = 0.5;
inline constexpr double kFlowShift = 1.0;
inline constexpr std::size_t kFlowMaxIters = 200000;
inline constexpr double kFlowGradTol = 1e-9;
inline constexpr double kFlowEnergyTol = 1e-12;
inline constexpr std::size_t kFlowRestarts = 3;
inline constexpr std::uint64_t kSeed = 0;

// Outer split search for J(gamma, mu)
inline constexpr double kSplitLowerFraction = 1e-3;
inline constexpr double kSplitTolerance = 1e-5;

// Time evolution
inline constexpr double kEvolveDt = 1e-3;
inline constexpr double kEvolveTEnd = 10.0;
inline constexpr std::size_t kSampleEvery = 100;
inline constexpr double kBlowupFactor = 1e6;

// Stability experiments
inline constexpr double kNoiseSmoothing = 0.01;
inline constexpr double kStabilityTEnd = 20.0;

}  // namespace triwave::defaults
