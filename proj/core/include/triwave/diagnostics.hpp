#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triwave/groundstate.hpp"

namespace triwave {

/// M(r) = sup_y int_{y-r}^{y+r} (|u1|^2 + |u2|^2 + |u3|^2), sup over grid centers.
struct ConcentrationProfile {
  std::vector<double> radii;
  std::vector<double> values;
  double total_mass = 0.0;

  /// Limit value lambda, i.e. the value at the largest radius.
  double lambda() const { return values.empty() ? 0.0 : values.back(); }
};

/// Radii must be positive and sorted. Each node owns a cell of width dx and
/// contributes the overlap of its cell with the window.
ConcentrationProfile concentration_function(const TriField& v, const std::vector<double>& radii);

/// Symmetric decreasing rearrangement on the grid: values sorted in
/// decreasing order are placed at x = 0, -dx, +dx, -2dx, +2dx, ..., -L.
/// Throws DomainError on negative or NaN input.
RealField symmetric_rearrangement(std::span<const double> f, const Grid& g);

/// Componentwise |v|*.
TriField rearranged_modulus(const TriField& v);

struct EnergyTriple {
  double rearranged = 0.0;  ///< E(|v|*)
  double modulus = 0.0;     ///< E(|v|)
  double original = 0.0;    ///< E(v)
};

EnergyTriple rearrangement_energy_check(const TriField& v, const Params& params);

/// I(targets) with zero entries allowed. Components with zero target are
/// held at zero, which reduces the problem to its decoupled scalar parts.
double constrained_infimum(const std::array<double, 3>& targets, const Params& params, const Grid& grid,
                           const FlowConfig& cfg);

using MassTriple = std::array<double, 3>;

struct SubadditivityRow {
  MassTriple part1{};
  MassTriple part2{};
  double i_sum = 0.0;
  double i_part1 = 0.0;
  double i_part2 = 0.0;
  /// i_part1 + i_part2 - i_sum; positive means strictly subadditive.
  double margin = 0.0;
  bool strict = false;
  /// Set when an inner solve failed; the numeric fields are then NaN.
  std::optional<std::string> error;
};

/// One row per split, evaluated in parallel. A row is strict when
/// margin > margin_tol.
std::vector<SubadditivityRow> subadditivity_scan(const std::vector<std::pair<MassTriple, MassTriple>>& splits,
                                                 const Params& params, const Grid& grid, const FlowConfig& cfg,
                                                 double margin_tol = 1e-4);

struct PhaseReport {
  /// Mass-weighted circular mean phase of each component.
  std::array<double, 3> mean_phase{};
  /// Mass-weighted standard deviation of the phase around the mean, in rad.
  std::array<double, 3> phase_std{};
  /// theta3 - (theta1 + theta2) wrapped to (-pi, pi].
  double group_defect = 0.0;
};

PhaseReport phase_structure(const TriField& v);

/// Seeded smooth complex test field: each component is a sum of one to three
/// Gaussian bumps (centers in [-L/4, L/4], widths in [1, 3]) times a slowly
/// varying phase.
TriField random_test_field(const Grid& g, std::uint64_t seed);

}  // namespace triwave
